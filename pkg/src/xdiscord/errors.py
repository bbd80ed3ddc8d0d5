"""Exception types raised across the package."""


class XDiscordError(Exception):
    """Base class for all package errors."""


class ShapeError(XDiscordError, ValueError):
    """An operator has a shape the operation does not accept."""


class NotHermitianError(XDiscordError, ValueError):
    pass


class PhysicalityError(XDiscordError, ValueError):
    """Parameters or a matrix do not describe a valid quantum state."""


class StructureError(XDiscordError, ValueError):
    """A density matrix is not of the z-axis X-state form."""


class ChannelError(XDiscordError, ValueError):
    """Invalid Kraus set, or an unsupported (channel, state family) combination."""


class NoCrossingError(XDiscordError, ValueError):
    """No branch crossing exists inside the requested bracket."""

"""Perfect state transfer and fractional revival in Krawtchouk spin chains."""

__version__ = "1.0.0"

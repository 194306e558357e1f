"""cwskit: search and verification toolkit for codeword stabilized quantum codes."""

__version__ = "0.1.0"

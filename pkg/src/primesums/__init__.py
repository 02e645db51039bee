"""
primesums: sieve-backed verification of exact prime-sum identities and
scanners for the conjectures built on them.

"""

__version__ = "0.1.0"

__all__ = [
    "__version__",
]

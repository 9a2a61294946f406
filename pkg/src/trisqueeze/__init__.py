"""Three-mode squeezing operator: symplectic closed forms and Fock-space numerics."""

__version__ = "0.1.0"

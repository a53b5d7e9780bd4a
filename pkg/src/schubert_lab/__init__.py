"""Exact computations with alcoves, lattices and global Schubert varieties for GL_n."""

__version__ = "0.1.0"

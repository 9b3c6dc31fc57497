"""Policy-aware planning with penalty minimization."""

__version__ = '0.1.0'

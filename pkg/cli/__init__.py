"""
CLI command registration helpers for curvmix.

Each submodule exposes a ``register`` function that attaches a group of
related commands to the root Click group defined in ``curvmix_cli.py``.
"""

__all__ = ["analyze", "generate", "runtime", "verify"]

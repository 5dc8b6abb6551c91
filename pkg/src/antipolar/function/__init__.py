from .base_function import Function

__all__ = ["Function"]

from .base_pipeline import Pipeline

__all__ = ["Pipeline"]

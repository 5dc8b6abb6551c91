from .base_workflow import Workflow

__all__ = ["Workflow"]

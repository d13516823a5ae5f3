from .commands import ExperimentController

__all__ = ["ExperimentController"]

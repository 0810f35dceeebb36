"""Exception hierarchy shared by every workbench module."""


class DenfuseError(Exception):
    """Base class for all workbench errors."""


class ConfigurationError(DenfuseError, ValueError):
    """A model, scenario or tracker configuration is invalid."""


class SimulationError(DenfuseError):
    """The simulator could not produce the requested data."""


class NumericalError(DenfuseError):
    """A numerical precondition failed, e.g. a covariance block is not PD."""

    def __init__(self, message: str, object_index: int | None = None) -> None:
        super().__init__(message)
        self.object_index = object_index


class TrackerDivergedError(DenfuseError):
    """A tracker iterate left the PD cone and damping could not recover it."""

    def __init__(
        self, message: str, sensor: int, object_index: int, iteration: int
    ) -> None:
        super().__init__(
            f"{message} (sensor={sensor}, object={object_index}, iteration={iteration})"
        )
        self.sensor = sensor
        self.object_index = object_index
        self.iteration = iteration


class ReportError(DenfuseError):
    """Reading or writing an artifact file failed."""

    def __init__(self, message: str, path: object) -> None:
        super().__init__(f"{message}: {path}")
        self.path = path

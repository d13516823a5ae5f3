def _restore(cls: type, message: str, state: dict) -> "DomainError":
    error = cls.__new__(cls, message)
    error.__dict__.update(state)
    return error


class DomainError(Exception):

    def __init__(self, message: str):
        self.message = message
        super().__init__(self.message)

    def __reduce__(self):
        # Subclass constructors take extra arguments; rebuild from state when crossing processes.
        return _restore, (type(self), self.message, self.__dict__)


class ConfigError(DomainError):

    def __init__(self, message: str, key: str | None = None):
        self.key = key
        super().__init__(message)


class ValidationError(DomainError):

    def __init__(self, message: str, field: str | None = None):
        self.field = field
        super().__init__(message)


class NumericalError(DomainError):
    pass


# Stemma

class StemmaError(ValidationError):

    def __init__(self, message: str, nodes: list[str] | None = None):
        self.nodes = list(nodes or [])
        super().__init__(message, field="stemma")


class CycleDetected(StemmaError):
    pass


class MultipleRoots(StemmaError):
    pass


class Disconnected(StemmaError):
    pass


class DuplicateEdge(StemmaError):
    pass


class DegenerateTree(StemmaError):
    pass


class NotALeaf(StemmaError):
    pass


class UnknownNode(StemmaError):
    pass


class Contamination(StemmaError):
    pass


# Collation

class CollationError(ValidationError):

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(message, field="collation")


class RaggedRow(CollationError):
    pass


class DuplicateWitness(CollationError):
    pass


class EmptyCollation(CollationError):
    pass


class UnknownArchetype(CollationError):
    pass


class TooManyVariants(CollationError):
    pass


class NotLettered(CollationError):
    pass


# Pair generation

class MissingWitnessColumn(ValidationError):

    def __init__(self, message: str, witnesses: list[str]):
        self.witnesses = list(witnesses)
        super().__init__(message, field="witnesses")


class UnknownWitness(ValidationError):

    def __init__(self, message: str, witness: str):
        self.witness = witness
        super().__init__(message, field="witness")


class EmptyInput(ValidationError):
    pass


class ValidTooLarge(ValidationError):
    pass


# Estimation

class EmptyTrainingSet(ValidationError):
    pass


class EmptyValidation(ValidationError):
    pass


class IncompatibleModel(ValidationError):
    pass


class NonFiniteLoss(NumericalError):

    def __init__(self, message: str, step: int, loss: float):
        self.step = step
        self.loss = loss
        super().__init__(message)


class NoTokenEmitted(NumericalError):
    pass


# Placement

class MissingEstimate(ValidationError):

    def __init__(self, message: str, nodes: list[str]):
        self.nodes = list(nodes)
        super().__init__(message, field="estimates")


class EstimateForUnknownNode(ValidationError):

    def __init__(self, message: str, nodes: list[str]):
        self.nodes = list(nodes)
        super().__init__(message, field="estimates")


# Evaluation

class LengthMismatch(ValidationError):
    pass


class EmptyEstimates(ValidationError):
    pass


class BadRange(ValidationError):
    pass


# Simulation

class BadParams(ValidationError):
    pass


class EmptyText(ValidationError):
    pass


# Storage

class StorageError(DomainError):

    def __init__(self, message: str, path: str | None = None):
        self.path = path
        super().__init__(f"{message} ({path})" if path else message)

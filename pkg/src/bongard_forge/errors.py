"""Exception hierarchy.

Every domain error derives from :class:`BongardForgeError`; the CLI prints the
class name so users can tell which stage failed.
"""


class BongardForgeError(Exception):
    pass


# action language
class DSLError(BongardForgeError, ValueError):
    pass


class MalformedSyntax(DSLError):
    pass


class UnknownKind(DSLError):
    pass


class UnknownMovingType(DSLError):
    pass


class ValueOutOfRange(DSLError):
    pass


class ExhaustedAlternatives(BongardForgeError):
    pass


# renderer
class DegenerateArc(BongardForgeError, ValueError):
    pass


class CannotFit(BongardForgeError):
    pass


# attributes
class UnknownAttribute(BongardForgeError, LookupError):
    pass


# shape library
class ParseError(BongardForgeError):
    pass


class DuplicateName(BongardForgeError):
    pass


class InvalidStroke(BongardForgeError):
    pass


class ArityMismatch(BongardForgeError, ValueError):
    pass


class EmptyFilter(BongardForgeError):
    pass


# problem generation / dataset building
class GenerationBudgetExceeded(BongardForgeError):
    pass


class InsufficientLibraryCoverage(BongardForgeError):
    pass


class SpecInfeasible(BongardForgeError):
    pass


class IoError(BongardForgeError, OSError):
    pass


class VerificationFailed(BongardForgeError):
    """A generated problem did not pass the independent verifier."""


class LibraryVersionMismatch(BongardForgeError):
    pass


class SchemaVersionMismatch(BongardForgeError):
    def __init__(self, found, expected):
        super().__init__(f"manifest schema version {found!r}, this build reads {expected!r}")
        self.found = found
        self.expected = expected


class MissingFile(BongardForgeError, FileNotFoundError):
    def __init__(self, path):
        super().__init__(f"missing file: {path}")
        self.path = str(path)


# evaluation harness
class UnknownSplit(BongardForgeError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else ""


class MissingPrediction(BongardForgeError):
    def __init__(self, missing):
        missing = sorted(missing)
        shown = ", ".join(missing[:10]) + (" ..." if len(missing) > 10 else "")
        super().__init__(f"{len(missing)} problem(s) without predictions: {shown}")
        self.missing = missing


class UnknownId(BongardForgeError):
    pass


class ImageReadError(BongardForgeError):
    pass

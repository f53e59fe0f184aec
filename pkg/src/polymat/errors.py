"""Exception types shared across the package."""

from __future__ import annotations


class PolymatroidError(Exception):
    """Base class for all errors raised by this package."""


class AxiomViolation(PolymatroidError):
    """A candidate rank table fails one of the four defining axioms.

    ``kind`` is one of ``normalization``, ``monotone``, ``submodular``,
    ``element_rank``; ``witness`` holds the offending subset(s) as
    frozensets of labels (or a single label for ``element_rank``).
    """

    def __init__(self, kind, witness, detail=""):
        self.kind = kind
        self.witness = witness
        msg = f"axiom violation ({kind}): witness {witness!r}"
        if detail:
            msg += f" [{detail}]"
        super().__init__(msg)


class UnknownElement(PolymatroidError):
    def __init__(self, label):
        self.label = label
        super().__init__(f"unknown element {label!r}")


class DuplicateLabel(PolymatroidError):
    def __init__(self, label):
        self.label = label
        super().__init__(f"duplicate label {label!r}")


class SizeOutOfRange(PolymatroidError):
    pass


class NotAFlat(PolymatroidError):
    def __init__(self, label, subset):
        self.label = label
        self.subset = subset
        super().__init__(f"image of {label!r} is not a flat: {sorted(subset)!r}")


class BasepointRankMismatch(PolymatroidError):
    pass


class DegenerateBasepoint(PolymatroidError):
    pass


class TooSmall(PolymatroidError):
    pass


class NotAnExact2Separation(PolymatroidError):
    pass


class NotCompact(PolymatroidError):
    pass


class Undefined(PolymatroidError):
    """A derived quantity is not defined for the given arguments."""


class NoTwoSeparation(PolymatroidError):
    pass


class PreconditionViolated(PolymatroidError):
    pass


class HypothesisViolated(PolymatroidError):
    """A theorem verifier was called on inputs that fail its hypotheses."""

    def __init__(self, which):
        self.which = which
        super().__init__(f"hypothesis violated: {which}")


class ParseError(PolymatroidError):
    def __init__(self, line_no, reason):
        self.line_no = line_no
        self.reason = reason
        super().__init__(f"line {line_no}: {reason}")

"""Exception types shared across the package."""


class CapExceededError(RuntimeError):
    """Group closure grew past the element cap (group is infinite or too large)."""


class NonMonomialDenominatorError(ValueError):
    """A conjugation would produce a denominator that is not a monomial."""


class SingularPointError(ValueError):
    """Evaluation requested on the vanishing locus of a denominator."""


class BranchError(ValueError):
    """The tracked radical branch is undefined (radicand path meets zero)."""


class SingularityApproachError(RuntimeError):
    """A trajectory came too close to the singular locus of its vector field."""

    def __init__(self, point, step):
        super().__init__(
            f"trajectory aborted at step {step}: point {point} is within the "
            "singularity-proximity threshold"
        )
        self.point = point
        self.step = step

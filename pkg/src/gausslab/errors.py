"""Shared exception types and the desk-scale enumeration cap."""

import os

# Exhaustive operations refuse domains larger than this unless overridden.
DEFAULT_CAP = 2**20


class GaussLabError(Exception):
    """Base class for all library errors."""


class NotPrime(GaussLabError):
    pass


class NonIrreducibleModulus(GaussLabError):
    pass


class NotASubfield(GaussLabError):
    pass


class FieldMismatch(GaussLabError):
    pass


class ZeroPolynomial(GaussLabError):
    pass


class ScaleCapExceeded(GaussLabError):
    pass


class IncompatibleOrders(GaussLabError):
    """Raised when a cyclotomic computation would exceed the order cap."""


class NonIntegralElementarySymmetric(GaussLabError):
    """Newton recursion hit a non-integral division: inconsistent power sums."""

    def __init__(self, k, value):
        super().__init__(f"elementary symmetric e_{k} is not integral: {value}")
        self.k = k
        self.value = value


class NotQuadratic(GaussLabError):
    """Carries a witness triple (x, x', y) violating bilinearity."""

    def __init__(self, witness):
        super().__init__(f"pairing is not bilinear, witness {witness}")
        self.witness = witness


class TheoremViolated(GaussLabError):
    """A proven identity failed exactly: a bug detector, not new mathematics."""


class CharacterNotInImage(GaussLabError):
    pass


class NotElementaryTwoGroup(GaussLabError):
    pass


class ConstructionFailed(GaussLabError):
    pass


class NotSymmetric(GaussLabError):
    pass


class DegeneratePairing(GaussLabError):
    pass


class SwanDivisibleByP(GaussLabError):
    pass


class NotEtale(GaussLabError):
    pass


class IdentityFails(GaussLabError):
    pass


class NotPerfect(GaussLabError):
    """Carries a radical witness for a degenerate alternating pairing."""

    def __init__(self, witness):
        super().__init__(f"pairing has nontrivial radical, witness {witness}")
        self.witness = witness


class NotAlternating(GaussLabError):
    pass


class NonInjectiveCharacter(GaussLabError):
    pass


class NoAdditiveSolution(GaussLabError):
    pass


def scale_cap():
    """Current enumeration cap (env GAUSSLAB_CAP overrides the default)."""
    raw = os.environ.get("GAUSSLAB_CAP")
    if raw:
        return int(raw)
    return DEFAULT_CAP


def check_cap(n_points, override=False, what="enumeration"):
    if override:
        return
    cap = scale_cap()
    if n_points > cap:
        raise ScaleCapExceeded(f"{what} over {n_points} points exceeds cap {cap}")

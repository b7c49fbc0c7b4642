"""Exception types shared across the package.

Every error raised by the numerical layers derives from QVerifyError so
callers that must never propagate (the verification engine, the CLI) can
catch one type and classify the rest by name.
"""


class QVerifyError(Exception):
    """Base class for all library errors."""


class NonConvergence(QVerifyError):
    """A series or quadrature failed to meet its tolerance within budget."""


class PoleAtNegativeIndex(QVerifyError):
    """Finite q-shifted factorial with negative index hit a vanishing factor."""


class PoleAtNonpositiveInteger(QVerifyError):
    """q-gamma evaluated at (numerically) a nonpositive integer."""


class BranchAmbiguity(QVerifyError):
    """Principal-branch power is ambiguous (negative real axis, non-integer order)."""


class OutsideAnnulus(QVerifyError):
    """Bilateral series argument lies outside its annulus of convergence."""


class OutsideDisk(QVerifyError):
    """Unilateral series argument lies outside the unit disk."""


class OutsideDomain(QVerifyError):
    """Closed-form expression requested outside its validity region."""


class PoleInRange(QVerifyError):
    """A denominator factor vanishes within the summation range."""


class PoleInProduct(QVerifyError):
    """An infinite product in a closed form has a (near-)vanishing factor."""


class SamplerStarved(QVerifyError):
    """Domain sampler acceptance rate fell below the configured floor."""

"""Exception types shared across the package."""


class SingularBathError(ValueError):
    """Raised when a bath combination makes the rate kernel singular (W = 0 or xi_v = 0)."""


class DisconnectedLadderError(RuntimeError):
    """Raised when a transition rate underflows to zero at chi = 0.

    A vanishing link splits the ladder into disjoint pieces and the steady
    state is no longer unique; downstream quantities would be spurious.
    """

    def __init__(self, m, message=None):
        self.m = m
        super().__init__(message or f"ladder link at m = {m} carries zero rate; "
                                    "steady state is not unique")


class ConvergenceError(RuntimeError):
    """Raised when an iterative or quadrature scheme fails to meet its tolerance."""

    def __init__(self, message, diagnostics=None):
        self.diagnostics = diagnostics or {}
        super().__init__(message)


class MonotoneObjectiveError(RuntimeError):
    """Raised when an optimization objective has no interior maximum on the coarse grid."""

    def __init__(self, boundary_alpha, boundary_value, message=None):
        self.boundary_alpha = boundary_alpha
        self.boundary_value = boundary_value
        super().__init__(message or "objective is monotone on the coarse grid; "
                                    f"best boundary point alpha = {boundary_alpha:g}")

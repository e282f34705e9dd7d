class UsageError(Exception):
    pass


class ConfigurationError(UsageError):
    """Thrown when a mesh, tableau, problem or run configuration is invalid"""

    pass


class InvalidOrderError(UsageError):
    def __init__(self, order):
        self.order = order

    def __str__(self):
        return "Quadrature order must be a positive integer, got %r" % (self.order,)


class BasisIndexError(IndexError):
    def __init__(self, index, degree):
        self.index, self.degree = index, degree

    def __str__(self):
        return "Basis index %r out of range for degree %i (valid: 0..%i)" \
            % (self.index, self.degree, self.degree)


class KineticError(Exception):
    """Base class for failures inside the numerical core"""

    pass


class DomainError(KineticError):
    """Thrown when moments do not correspond to a fluid state with n > 0, theta > 0"""

    def __init__(self, message, location=None):
        self.message, self.location = message, location

    def __str__(self):
        if self.location is None:
            return self.message
        return "%s (at x=%.17g)" % (self.message, self.location)


class SolverError(KineticError):
    def __init__(self, message, residual=None):
        self.message, self.residual = message, residual

    def __str__(self):
        if self.residual is None:
            return self.message
        return "%s (residual=%.3e)" % (self.message, self.residual)


class AssemblyError(KineticError):
    pass


class VacuumError(KineticError):
    def __init__(self, left, right):
        self.left, self.right = left, right

    def __str__(self):
        return "Riemann data generates vacuum: left=%r, right=%r" % (self.left, self.right)


class MeshMismatchError(KineticError):
    def __init__(self, shape, ref_shape):
        self.shape, self.ref_shape = shape, ref_shape

    def __str__(self):
        return "Cannot compare data of shape %r with reference of shape %r" \
            % (self.shape, self.ref_shape)


class RunAborted(Exception):
    """Thrown by the run driver, wrapping the error that stopped a time loop"""

    def __init__(self, step, cause):
        self.step, self.cause = step, cause

    def __str__(self):
        return "Run aborted at step %i: %s" % (self.step, self.cause)

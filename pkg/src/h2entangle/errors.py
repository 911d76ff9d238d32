"""Exception hierarchy. Every error carries a short machine-readable ``code``."""


class H2EntangleError(ValueError):
    code = "error"

    def __str__(self):
        return super().__str__() or self.code


class NotHermitian(H2EntangleError):
    code = "not_hermitian"


class NotPSD(H2EntangleError):
    code = "not_psd"


class BadTrace(H2EntangleError):
    code = "bad_trace"


class InvalidDensity(H2EntangleError):
    code = "invalid_density"


class LambdaZero(H2EntangleError):
    code = "lambda_zero"


class WrongRegion(H2EntangleError):
    code = "wrong_region"


class QuadratureNotConverged(H2EntangleError):
    code = "quadrature_not_converged"


class NegativeDistance(H2EntangleError):
    code = "negative_distance"


class NotNormalized(H2EntangleError):
    code = "not_normalized"


class NonPositive(H2EntangleError):
    code = "non_positive"


class ParseError(H2EntangleError):
    code = "parse_error"

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class InvariantViolation(H2EntangleError):
    code = "invariant_violation"


class TooFewSamples(H2EntangleError):
    code = "too_few_samples"


class SingularBasis(H2EntangleError):
    code = "singular_basis"

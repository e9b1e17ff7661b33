"""
Engine exceptions.

One hierarchy rooted at EngineError, one family per service module.
Every error carries the structured fields callers need (rows, iterations,
residuals, stress coordinates) next to a readable message.
"""


class EngineError(Exception):
    """Base class for every error raised by the engine."""

    code = "engine_error"

    def __init__(self, message):
        super().__init__(message)
        self.message = message


# Dataset


class DatasetError(EngineError):
    code = "dataset_error"


class DatasetNotFound(DatasetError, FileNotFoundError):
    code = "file_not_found"

    def __init__(self, path):
        super().__init__(f"Test set file not found: {path}")
        self.path = str(path)


class MalformedCsv(DatasetError):
    code = "malformed_csv"

    def __init__(self, detail, row=None, column=None):
        location = []
        if row is not None:
            location.append(f"row {row}")
        if column is not None:
            location.append(f"column {column!r}")
        where = f" ({', '.join(location)})" if location else ""
        super().__init__(f"Malformed CSV{where}: {detail}")
        self.row = row
        self.column = column


class MalformedDocument(DatasetError):
    code = "malformed_document"


class NonNumericFeature(DatasetError):
    code = "non_numeric"

    def __init__(self, rows, columns):
        super().__init__(
            f"Non-numeric, missing or non-finite cells in columns {sorted(columns)} "
            f"at rows {list(rows)}"
        )
        self.rows = list(rows)
        self.columns = sorted(columns)


class LabelOutOfRange(DatasetError):
    code = "label_out_of_range"

    def __init__(self, column, rows, allowed):
        super().__init__(
            f"Column {column!r} holds labels outside {allowed} at rows {list(rows)}"
        )
        self.column = column
        self.rows = list(rows)
        self.allowed = allowed


class TooFewRows(DatasetError):
    code = "too_few_rows"

    def __init__(self, n):
        super().__init__(f"A test set needs at least 2 rows, got {n}")
        self.n = n


class IndexOutOfRange(DatasetError):
    code = "index_out_of_range"

    def __init__(self, index, p):
        super().__init__(f"Variable index {index} outside [0, {p - 1}]")
        self.index = index
        self.p = p


class UnknownVariable(DatasetError):
    code = "unknown_variable"

    def __init__(self, name):
        super().__init__(f"Unknown variable {name!r}")
        self.name = name


class RhoOutOfRange(DatasetError):
    code = "rho_out_of_range"

    def __init__(self, rho):
        super().__init__(f"Quantile level {rho} outside [0, 1)")
        self.rho = rho


# Projection


class ProjectionError(EngineError):
    code = "projection_error"


class NonFiniteInput(ProjectionError):
    code = "non_finite_input"


class InfeasibleTarget(ProjectionError):
    code = "infeasible_target"

    def __init__(self, reason):
        super().__init__(f"Infeasible target: {reason}")
        self.reason = reason


class DidNotConverge(ProjectionError):
    code = "did_not_converge"

    def __init__(self, iterations, residual, diverged=False):
        detail = "; dual variable diverged (target infeasible or on hull boundary)"
        super().__init__(
            f"Dual solver did not converge after {iterations} iterations "
            f"(residual {residual:.3e}){detail if diverged else ''}"
        )
        self.iterations = iterations
        self.residual = residual
        self.diverged = diverged


class SingularHessian(ProjectionError):
    code = "singular_hessian"

    def __init__(self, combination, labels):
        terms = " + ".join(
            f"{coef:.3g}*{label}" for coef, label in zip(combination, labels) if abs(coef) > 1e-8
        )
        super().__init__(f"Tilted covariance is rank-deficient along {terms}")
        self.combination = list(combination)
        self.labels = list(labels)


class NotConverged(ProjectionError):
    code = "not_converged"

    def __init__(self):
        super().__init__("Weights requested from a dual solution that did not converge")


class SameVariable(ProjectionError):
    code = "same_variable"

    def __init__(self, index):
        super().__init__(f"Covariance constraint needs two distinct variables, got {index} twice")
        self.index = index


# Stress


class StressError(EngineError):
    code = "stress_error"


class TauOutOfRange(StressError):
    code = "tau_out_of_range"

    def __init__(self, tau):
        super().__init__(f"Stress level tau={tau} outside [-1, 1]")
        self.tau = tau


class AlphaOutOfRange(StressError):
    code = "alpha_out_of_range"

    def __init__(self, alpha):
        super().__init__(f"Quantile anchor alpha={alpha} outside (0, 0.5)")
        self.alpha = alpha


class InadmissibleTarget(StressError):
    code = "inadmissible"

    def __init__(self, variable, tau, target, minimum, maximum):
        super().__init__(
            f"inadmissible: target {target!r} for variable {variable} at tau={tau} "
            f"is not strictly inside ({minimum!r}, {maximum!r})"
        )
        self.variable = variable
        self.tau = tau
        self.target = target
        self.minimum = minimum
        self.maximum = maximum


class DegenerateColumn(StressError):
    code = "degenerate_column"

    def __init__(self, variable):
        super().__init__(f"degenerate column: variable {variable} is constant")
        self.variable = variable


# Indicators


class IndicatorError(EngineError):
    code = "indicator_error"


class TaskMismatch(IndicatorError):
    code = "task_mismatch"

    def __init__(self, indicator, task):
        super().__init__(f"Indicator {indicator!r} is not defined for task {task!r}")
        self.indicator = indicator
        self.task = task


class UnknownClass(IndicatorError):
    code = "unknown_class"

    def __init__(self, class_id, n_classes):
        super().__init__(f"Class {class_id!r} outside 0..{n_classes - 1}")
        self.class_id = class_id


class EmptyClassMass(IndicatorError):
    code = "empty_class_mass"

    def __init__(self, which):
        super().__init__(f"Zero weighted mass in the {which} denominator")
        self.which = which


# Sweep


class SweepError(EngineError):
    code = "sweep_error"


class InvalidSweepConfig(SweepError):
    code = "invalid_config"


class TauNotOnGrid(SweepError):
    code = "tau_not_on_grid"

    def __init__(self, tau):
        super().__init__(f"tau={tau} is not on the sweep grid")
        self.tau = tau


class IndicatorAbsent(SweepError):
    code = "indicator_absent"

    def __init__(self, indicator):
        super().__init__(f"Indicator {indicator!r} was not computed in this sweep")
        self.indicator = indicator


# Harness


class HarnessError(EngineError):
    code = "harness_error"


class InvalidSpec(HarnessError):
    code = "invalid_spec"

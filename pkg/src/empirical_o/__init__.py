"""Empirical complexity bounds for quicksort over random inputs.

Generate inputs from six standard distributions, sort them with an
instrumented first-element-pivot quicksort, sweep the input size with
repeated trials, and classify each measurement curve by least-squares
comparison of candidate complexity classes. Discrete inputs with heavy
ties push this partition scheme to quadratic cost; continuous inputs stay
at n log n.
"""

from .distributions import (
    Binomial,
    ContinuousUniform,
    DiscreteUniform,
    DistributionSpec,
    Exponential,
    Poisson,
    Sample,
    StdNormal,
    make_rng,
    parse_spec,
    sample,
    sample_binomial,
    sample_continuous_uniform,
    sample_discrete_uniform,
    sample_exponential,
    sample_poisson,
    sample_std_normal,
)
from .experiment import (
    DEFAULT_DISTRIBUTIONS,
    DEFAULT_GRID,
    CellResult,
    ExperimentError,
    ExperimentPlan,
    MeasurementCsvError,
    MeasurementTable,
    aggregate,
    default_plan,
    read_measurement_csv,
    run_experiment,
    trial_rng,
    write_measurement_csv,
    write_wide_view,
)
from .fitting import (
    CLASSES,
    DEFAULT_CANDIDATES,
    ComplexityClass,
    DegenerateDesignError,
    EmpiricalComplexityRegressor,
    EmpiricalVerdict,
    FitReport,
    FitResult,
    fit,
    fit_report,
    select_bound,
    write_plot_data,
    write_verdicts_csv,
)
from .fixtures import (
    FixtureIntegrityError,
    check_fixture_integrity,
    load_fixture_table1,
)
from .quicksort import (
    InstrumentedRun,
    SortOutcome,
    clock_resolution,
    partition,
    quicksort,
    quicksort_recursive,
    timed_sort,
)

__version__ = "0.1.0"

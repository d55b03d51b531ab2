"""Bundled reference benchmark for the fitting pipeline.

Mean and standard deviation of quicksort wall times (seconds, 10 trials
per cell) for the six stock input distributions over n = 5000..50000,
recorded on a Pentium 4 / Windows XP reference machine. Absolute seconds
are machine-bound and are not reproduction targets; the dataset exists so
the class-selection pipeline has a fixed, regression-tested input whose
verdicts are known (quadratic for the three discrete models, n log n for
the three continuous ones).
"""

from __future__ import annotations

import hashlib
import io

from .distributions import (
    Binomial,
    ContinuousUniform,
    DiscreteUniform,
    DistributionSpec,
    Exponential,
    Poisson,
    StdNormal,
)
from .experiment import CellResult, MeasurementTable, write_measurement_csv

__all__ = [
    "FIXTURE_N",
    "FIXTURE_NLOG10N",
    "FIXTURE_SPECS",
    "FIXTURE_MEANS",
    "FIXTURE_SDS",
    "FixtureIntegrityError",
    "load_fixture_table1",
    "check_fixture_integrity",
]

FIXTURE_SPECS: tuple[DistributionSpec, ...] = (
    Binomial(100, 0.5),
    Poisson(1.0),
    DiscreteUniform(50),
    ContinuousUniform(1.0),
    Exponential(1.0),
    StdNormal(0.0, 1.0),
)

FIXTURE_N = (5000, 10000, 15000, 20000, 25000, 30000, 35000, 40000, 45000, 50000)

# The dataset's companion column n * log10(n), as published (2 decimals).
FIXTURE_NLOG10N = (
    18494.85,
    40000.00,
    62641.37,
    86020.60,
    109948.50,
    134313.64,
    159042.38,
    184082.40,
    209394.56,
    234948.50,
)

# Mean sorting time in seconds; one row per n, columns in FIXTURE_SPECS order
# (binomial, poisson, duniform, cuniform, exponential, normal).
FIXTURE_MEANS = (
    (0.0047, 0.0047, 0.0015, 0.0016, 0.0016, 0.0031),
    (0.0095, 0.0172, 0.0031, 0.0031, 0.0047, 0.0063),
    (0.0091, 0.0422, 0.0062, 0.0062, 0.0078, 0.0062),
    (0.0156, 0.0719, 0.0062, 0.0062, 0.0109, 0.0110),
    (0.0266, 0.1140, 0.0093, 0.0093, 0.0110, 0.0109),
    (0.0345, 0.1609, 0.0156, 0.0157, 0.0156, 0.0140),
    (0.0421, 0.2188, 0.0203, 0.0156, 0.0156, 0.0154),
    (0.0579, 0.2812, 0.0218, 0.0157, 0.0171, 0.0189),
    (0.0735, 0.3625, 0.0282, 0.0204, 0.0202, 0.0219),
    (0.0844, 0.4453, 0.0391, 0.0235, 0.0219, 0.0233),
)

# Standard deviation of sorting time, same layout.
FIXTURE_SDS = (
    (0.007573, 0.007573, 0.004743, 0.005060, 0.005060, 0.006540),
    (0.008182, 0.005224, 0.006540, 0.006540, 0.007573, 0.008138),
    (0.007838, 0.007052, 0.008011, 0.008011, 0.008230, 0.008011),
    (0.000516, 0.008103, 0.008011, 0.008011, 0.007534, 0.007601),
    (0.007560, 0.007601, 0.008015, 0.008015, 0.007601, 0.007534),
    (0.006604, 0.007666, 0.000516, 0.000483, 0.000516, 0.004944),
    (0.007445, 0.007315, 0.007861, 0.000516, 0.000516, 0.000516),
    (0.007534, 0.000422, 0.008364, 0.000483, 0.005259, 0.006919),
    (0.007487, 0.006604, 0.006443, 0.007792, 0.007927, 0.008062),
    (0.008058, 0.019833, 0.008333, 0.008127, 0.008062, 0.008125),
)

FIXTURE_TRIALS = 10

# sha256 of the fixture's canonical CSV serialization; guards the constants
# above against accidental edits.
_FIXTURE_SHA256 = "bd72a3f5dc897bbbf26512fe5dd859f2e49bb79dc117756dc5208b2d322763c3"


class FixtureIntegrityError(RuntimeError):
    pass


def load_fixture_table1() -> MeasurementTable:
    """The bundled mean-time table as a MeasurementTable (metric ``time``).

    Rows come in grid order (n outer, distribution inner), means from the
    published mean table and SDs from its companion SD table. Per-trial
    values were never published, so ``trial_values`` is None.
    """
    rows = []
    for i, n in enumerate(FIXTURE_N):
        for j, spec in enumerate(FIXTURE_SPECS):
            rows.append(CellResult(n, spec, FIXTURE_MEANS[i][j], FIXTURE_SDS[i][j]))
    metadata = {
        "dataset": "table1",
        "host": "Pentium 4 3.0 GHz / Windows XP SP2 (legacy reference machine)",
    }
    return MeasurementTable("time", tuple(rows), FIXTURE_TRIALS, metadata)


def _fixture_digest() -> str:
    buf = io.StringIO()
    write_measurement_csv(load_fixture_table1(), buf)
    return hashlib.sha256(buf.getvalue().encode("ascii")).hexdigest()


def check_fixture_integrity():
    """Verify the embedded dataset against its frozen checksum and the
    n*log10(n) companion column (2-decimal agreement); raise on mismatch."""
    import math

    for n, published in zip(FIXTURE_N, FIXTURE_NLOG10N):
        if abs(n * math.log10(n) - published) > 0.005:
            raise FixtureIntegrityError(
                f"companion column mismatch at n={n}: "
                f"{n * math.log10(n):.2f} != {published}"
            )
    digest = _fixture_digest()
    if digest != _FIXTURE_SHA256:
        raise FixtureIntegrityError(
            f"fixture checksum mismatch: {digest} != {_FIXTURE_SHA256}"
        )

import numpy as np
import pytest

from empirical_o import quicksort


@pytest.fixture(scope="session", autouse=True)
def warm_sort_kernels():
    # trigger numba compilation of both key dtypes once, outside timed tests
    quicksort(np.array([2, 1, 3], dtype=np.int64))
    quicksort(np.array([2.0, 1.0, 3.0], dtype=np.float64))

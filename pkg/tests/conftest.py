import pytest

import ncbeta


@pytest.fixture(scope="session", autouse=True)
def _warm_kernels():
    """Compile (or cache-load) every jit kernel before any timed test runs."""
    ncbeta.warmup()

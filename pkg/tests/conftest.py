import pytest
from hypothesis import strategies as st

from twistlab import kernels


@pytest.fixture(params=kernels.available_backends())
def backend(request):
    """Run a test once per available kernel backend, restoring the default afterwards."""
    previous = kernels.backend()
    kernels.use_backend(request.param)
    yield request.param
    kernels.use_backend(previous)


def letters(rank: int, max_size: int = 12):
    return st.lists(
        st.integers(1, rank).flatmap(lambda i: st.sampled_from((i, -i))), max_size=max_size
    )

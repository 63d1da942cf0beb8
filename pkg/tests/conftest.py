import pytest
from instance import Instance, gen_example1, gen_kvv_window


@pytest.fixture
def example1() -> Instance:
    return gen_example1(d=10, gap_small=1, gap_large=19)


@pytest.fixture
def kvv_small() -> Instance:
    return gen_kvv_window(n=3, blocks=2, d=10)

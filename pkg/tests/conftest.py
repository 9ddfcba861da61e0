import pytest

from infoshare import set_log_base


@pytest.fixture(autouse=True)
def _bits_by_default():
    set_log_base(2)
    yield
    set_log_base(2)

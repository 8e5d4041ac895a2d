import pytest

from spintable import GameSpec, available_backends, rotation_generators


def rot_spec(n: int, m: int) -> GameSpec:
    return GameSpec(n, m, rotation_generators(n))


@pytest.fixture(params=available_backends())
def backend(request):
    return request.param

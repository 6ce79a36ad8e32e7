import pytest

from lgpideal import FieldSpec, QQ, moment_curve_points

P = 32003
FP = FieldSpec.prime(P)
FIELDS = [QQ, FP]


@pytest.fixture(params=FIELDS, ids=["Q", "Fp"])
def field(request):
    return request.param


def moment(n, d, field=QQ, start=0):
    return moment_curve_points(n, list(range(start, start + d)), field)

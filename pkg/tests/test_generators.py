import numpy as np
import pytest

from diracham.errors import InfeasibleSpec
from diracham.generators import InstanceSpec, generate, half
from diracham.graph import is_ham_cycle


def test_count_relaxed_example():
    g = generate(InstanceSpec("count-relaxed", 12, 2, 7)).graph
    assert (g.degrees >= 6).sum() >= 10


def test_degree_relaxed_dirac_example():
    a = generate(InstanceSpec("degree-relaxed", 10, 0, 1)).graph
    b = generate(InstanceSpec("degree-relaxed", 10, 0, 1)).graph
    assert a.min_degree >= 5
    assert a == b


@pytest.mark.parametrize("model", ["count-relaxed", "degree-relaxed"])
def test_invariants_sweep(model):
    rng = np.random.default_rng(3)
    for seed in range(150):
        n = int(rng.integers(3, 80))
        k = int(rng.integers(0, max(1, n // 4)))
        planted = bool(seed % 2)
        inst = generate(InstanceSpec(model, n, k, seed, planted))
        g = inst.graph
        if model == "count-relaxed":
            assert (2 * g.degrees < n).sum() <= k
        else:
            assert g.min_degree >= half(n) - k
        if planted:
            assert is_ham_cycle(g, inst.planted_cycle)
        else:
            assert inst.planted_cycle is None


@pytest.mark.parametrize("bad", [
    dict(model="other", n=5, k=0, seed=0),
    dict(model="count-relaxed", n=2, k=0, seed=0),
    dict(model="count-relaxed", n=5, k=6, seed=0),
    dict(model="degree-relaxed", n=5, k=-1, seed=0),
])
def test_spec_validation(bad):
    with pytest.raises(InfeasibleSpec):
        InstanceSpec(**bad)

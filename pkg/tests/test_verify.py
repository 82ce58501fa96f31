import json

import pytest

from divsyl.verify import LEMMAS, run_lemma

NAMES = ["nupfactor", "extension", "psolvable", "almsimple", "inducedauto", "normpqp",
         "wreathembed", "numpwreath", "subdirect", "maintheorem", "proposition", "conjecture"]


def test_registry_names():
    assert list(LEMMAS) == NAMES


@pytest.mark.parametrize("name", NAMES)
def test_lemma_verified_on_small_catalog(name):
    r = run_lemma(name, "small", seed=0)
    assert r.verified, [(c.group, c.p, c.detail) for c in r.failures]
    assert sum(c.applicable for c in r.checks) > 0
    d = r.to_dict()
    assert d["verified"] and d["lemma"] == name
    json.dumps(d, default=str)


def test_reports_are_seed_stable():
    a = run_lemma("nupfactor", "small", seed=0).to_dict()
    b = run_lemma("nupfactor", "small", seed=0).to_dict()
    assert a == b


def test_max_order_skips_large_groups():
    r = run_lemma("nupfactor", "small", max_order=24)
    assert "alt(5)" in r.skipped and r.max_order == 24
    assert all(c.group not in r.skipped for c in r.checks)


def test_unknown_lemma():
    with pytest.raises(KeyError):
        run_lemma("nope")

import json
from pathlib import Path

import pytest

from flowcat import PolyMatrix, corelation, typecheck, parse
from flowcat.field import GF
from flowcat.opsem import compare_window_sets
from flowcat.semantics import behavior_equal, behavior_equal_by_solve, corelation_from_kernel

CORPUS = Path(__file__).resolve().parent.parent / "corpus"
GOLDEN = json.loads((CORPUS / "golden.json").read_text())


def load(name):
    return typecheck(parse((CORPUS / name).read_text()))


@pytest.mark.parametrize("name", sorted(GOLDEN))
def test_golden_kernel(name):
    g = GOLDEN[name]
    tt = load(name)
    assert (tt.arity, tt.coarity) == (g["m"], g["n"])
    K = PolyMatrix.from_rows(g["kernel_rep"], cols=g["m"] + g["n"])
    expected = corelation_from_kernel(K, g["m"])
    got = corelation(tt)
    assert behavior_equal(got, expected)
    assert behavior_equal_by_solve(got, expected)


@pytest.mark.parametrize("name", sorted(p.name for p in CORPUS.glob("random_*.sfg")))
@pytest.mark.parametrize("field", [GF(2), GF(3)], ids=["Z2", "Z3"])
def test_random_corpus_windows_agree(name, field):
    ok, ops, den = compare_window_sets(load(name), 4, field)
    assert ok, (ops.dim, den.dim)


def test_every_corpus_file_typechecks():
    for path in CORPUS.glob("*.sfg"):
        typecheck(parse(path.read_text()))

import os

import pytest

import threepage as tp

DATA_DIR = os.path.join(os.path.dirname(__file__), "data")
CORPUS_PATH = os.path.join(DATA_DIR, "corpus.txt")

HOPF = "PD[X(1,4,2,3), X(3,2,4,1)]"
TREFOIL = "PD[X(1,4,2,5), X(3,6,4,1), X(5,2,6,3)]"
TREFOIL_SWITCHED = "PD[X(4,2,5,1), X(3,6,4,1), X(5,2,6,3)]"
FIGURE_EIGHT = "PD[X(4,2,5,1), X(8,6,1,5), X(6,3,7,4), X(2,7,3,8)]"
KINK = "PD[X(1,1,2,2)]"
# Two clasps joined by two bridge edges; reduced but composite.  The only
# feasible edge-disjoint face pairs here sit on disjoint crossing sets.
TWO_CLASPS = "PD[X(8,2,1,7), X(2,8,3,1), X(4,6,5,3), X(6,4,7,5)]"
NON_SPHERE = "PD[X(1,2,1,2)]"


def load_corpus_texts() -> dict:
    out = {}
    with open(CORPUS_PATH, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            name, _, body = line.partition(":")
            out[name.strip()] = body.strip()
    return out


CORPUS_TEXTS = load_corpus_texts()
CORPUS_NAMES = sorted(CORPUS_TEXTS)


def torus_pd(k: int) -> str:
    rows = []
    for i in range(k):
        left = lambda j: 2 * (j % k) + 1
        right = lambda j: 2 * (j % k) + 2
        rows.append((right(i - 1), right(i), left(i), left(i - 1)))
    return "PD[" + ", ".join("X(%d,%d,%d,%d)" % r for r in rows) + "]"


def switch_crossing(pd_text: str, idx: int) -> str:
    d = tp.parse_pd(pd_text)
    rows = [list(r) for r in d.crossings]
    a, b, c, e = rows[idx]
    rows[idx] = [b, c, e, a]
    return "PD[" + ", ".join("X(%d,%d,%d,%d)" % tuple(r) for r in rows) + "]"


def relabel_shift(pd_text: str, shift: int) -> str:
    d = tp.parse_pd(pd_text)
    top = max(lab for row in d.crossings for lab in row)
    rows = [tuple((lab + shift - 1) % top + 1 for lab in row)
            for row in d.crossings]
    return "PD[" + ", ".join("X(%d,%d,%d,%d)" % r for r in rows) + "]"


def disjoint_union(pd_a: str, pd_b: str) -> str:
    da, db = tp.parse_pd(pd_a), tp.parse_pd(pd_b)
    top = max(lab for row in da.crossings for lab in row)
    rows = list(da.crossings) + [tuple(lab + top for lab in row)
                                 for row in db.crossings]
    return "PD[" + ", ".join("X(%d,%d,%d,%d)" % tuple(r) for r in rows) + "]"


@pytest.fixture(scope="session")
def corpus():
    return {name: tp.parse_pd(text) for name, text in CORPUS_TEXTS.items()}


@pytest.fixture(params=CORPUS_NAMES)
def corpus_entry(request, corpus):
    return request.param, corpus[request.param]


@pytest.fixture(scope="session")
def corpus_complexes(corpus):
    return {name: tp.CellComplex(d) for name, d in corpus.items()}

"""Groups shared by the property suites, with the facts frozen from exact runs."""

import warnings

from ibisgroups import atlas as A
from ibisgroups.perm import GeneratedGroup, parse_permutation


def _cyclic(n):
    return A.AtlasEntry(f"C{n}", {"n": n},
                        GeneratedGroup(n, (parse_permutation("(" + " ".join(map(str, range(1, n + 1))) + ")", n),), f"C{n}"),
                        A.Expected(n, n, True, 1))


def _proj(q, name):
    return lambda: A.projective_group(q, name)


def _subsets(parent, n, k):
    def build():
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            return A.on_k_subsets(parent, n, k)
    return build


# name -> (builder, min, max, almost simple)
CORPUS = {
    "C6": (lambda: _cyclic(6), 1, 1, False),
    "Sym(4)": (lambda: A.sym(4), 3, 3, False),
    "Sym(4) on 2-subsets": (_subsets("sym", 4, 2), 2, 2, False),
    "Sym(5)": (lambda: A.sym(5), 4, 4, True),
    "Alt(5)": (lambda: A.alt(5), 3, 3, True),
    "Sym(6)": (lambda: A.sym(6), 5, 5, True),
    "Alt(6)": (lambda: A.alt(6), 4, 4, True),
    "Sym(7)": (lambda: A.sym(7), 6, 6, True),
    "Alt(7)": (lambda: A.alt(7), 5, 5, True),
    "Sym(5) on 2-subsets": (_subsets("sym", 5, 2), 3, 4, True),
    "Alt(5) on 2-subsets": (_subsets("alt", 5, 2), 2, 3, True),
    "Alt(6) degree 6 cosets": (lambda: A.small_coset_action("alt"), 4, 4, True),
    "Sym(6) degree 6 cosets": (lambda: A.small_coset_action("sym"), 5, 5, True),
    "PSL2(5)": (_proj(5, "PSL2(5)"), 3, 3, True),
    "PGL2(5)": (_proj(5, "PGL2(5)"), 3, 3, True),
    "PSL2(7)": (_proj(7, "PSL2(7)"), 3, 3, True),
    "PGL2(7)": (_proj(7, "PGL2(7)"), 3, 3, True),
    "PSL2(8)": (_proj(8, "PSL2(8)"), 3, 3, True),
    "PGammaL2(8)": (_proj(8, "PGammaL2(8)"), 4, 4, True),
    "PSL2(9)": (_proj(9, "PSL2(9)"), 3, 3, True),
    "PGL2(9)": (_proj(9, "PGL2(9)"), 3, 3, True),
    "M10": (_proj(9, "M10"), 3, 3, True),
    "PSigmaL2(9)": (_proj(9, "PSigmaL2(9)"), 4, 4, True),
    "PGammaL2(9)": (_proj(9, "PGammaL2(9)"), 4, 4, True),
    "PSL2(11)": (_proj(11, "PSL2(11)"), 3, 3, True),
    "PGL2(11)": (_proj(11, "PGL2(11)"), 3, 3, True),
    "M11": (lambda: A.mathieu("M11"), 4, 4, True),
    "Sym(6) on 2-subsets": (_subsets("sym", 6, 2), 4, 4, True),
    "Alt(6) on 2-subsets": (_subsets("alt", 6, 2), 3, 3, True),
    "Alt(7) degree 15": (lambda: A.alt7_degree15("points"), 3, 3, True),
    "SL4(2) on vectors": (lambda: A.sl_n_2_on_vectors(4), 4, 4, True),
    "SL4(2) on hyperplanes": (lambda: A.sl_n_2_on_hyperplanes(4), 4, 4, True),
    "Sp4(2) on vectors": (lambda: A.sp_n_2_on_vectors(4), 4, 4, True),
    "Sp4(2)' on vectors": (A.sp4_2_derived, 3, 3, True),
    "Sym(7) on 2-subsets": (_subsets("sym", 7, 2), 4, 5, True),
    "Alt(7) on 2-subsets": (_subsets("alt", 7, 2), 4, 5, True),
}

_cache = {}


def entry(name):
    if name not in _cache:
        _cache[name] = CORPUS[name][0]()
    return _cache[name]


def names(max_degree=None, max_order=None, ibis=None, almost_simple=None):
    out = []
    for name, (_, lo, hi, simple) in CORPUS.items():
        if ibis is not None and (lo == hi) != ibis:
            continue
        if almost_simple is not None and simple != almost_simple:
            continue
        e = entry(name)
        if max_degree is not None and e.degree > max_degree:
            continue
        if max_order is not None and e.order() > max_order:
            continue
        out.append(name)
    return out

"""Finite-dimensional algebras: structure constants and quivers with relations.

Every algebra here is basic and split: its basis is the vertex idempotents
followed by a basis of the radical, and each basis element b satisfies
b = e_src(b) * b * e_tgt(b).  Right modules are quiver representations, so
a basis element with src u and tgt w moves vectors from M_u to M_w, and a
product b*c acts as "first b, then c".
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Any, Optional, Sequence

import numpy as np

from . import exactlin as el


class SpecError(ValueError):
    """Malformed algebra description."""


class NonAdmissible(SpecError):
    pass


class InfiniteDimensional(ValueError):
    pass


MAX_PATHS = 6000


class SCAlgebra:
    """Algebra given by structure constants on a basis adapted to the vertices.

    ``table[i, j, k]`` is the coefficient of basis element k in b_i * b_j.
    ``gens`` are basis indices generating the radical as an algebra, and
    ``words[i]`` writes basis element i as a product of those generators
    (empty word for an idempotent).
    """

    def __init__(self, p, vertices, labels, src, tgt, table, idem, gens, words, name=""):
        self.p = int(p)
        self.vertices = tuple(vertices)
        self.labels = tuple(labels)
        self.src = tuple(int(s) for s in src)
        self.tgt = tuple(int(t) for t in tgt)
        self.table = np.asarray(table, dtype=np.int64) % self.p
        self.idem = tuple(int(i) for i in idem)
        self.gens = tuple(int(g) for g in gens)
        self.words = tuple(tuple(int(x) for x in w) for w in words)
        self.name = name
        self._op: Optional[SCAlgebra] = None
        self._cache: dict = {}

    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def nvert(self) -> int:
        return len(self.vertices)

    def radical_basis(self) -> list[int]:
        idem = set(self.idem)
        return [i for i in range(self.dim) if i not in idem]

    def mul(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return np.einsum("i,j,ijk->k", x, y, self.table) % self.p

    def unit(self, i: int) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        v[i] = 1
        return v

    def right_mult(self, g: int) -> np.ndarray:
        """Matrix (columns = basis) of b -> b * b_g."""
        return self.table[:, g, :].T.copy()

    def left_mult(self, g: int) -> np.ndarray:
        return self.table[g, :, :].T.copy()

    def check_associative(self) -> bool:
        t = self.table
        lhs = np.einsum("ijm,mkl->ijkl", t, t) % self.p
        rhs = np.einsum("jkm,iml->ijkl", t, t) % self.p
        return bool(np.array_equal(lhs, rhs))

    def check_idempotents(self) -> bool:
        total = np.zeros(self.dim, dtype=np.int64)
        for a in self.idem:
            for b in self.idem:
                want = self.unit(a) if a == b else np.zeros(self.dim, dtype=np.int64)
                if not np.array_equal(self.mul(self.unit(a), self.unit(b)), want):
                    return False
            total = total + self.unit(a)
        for i in range(self.dim):
            if not np.array_equal(self.mul(total % self.p, self.unit(i)), self.unit(i)):
                return False
        return True

    def opposite(self) -> "SCAlgebra":
        if self._op is None:
            op = SCAlgebra(
                self.p, self.vertices, self.labels, self.tgt, self.src,
                np.transpose(self.table, (1, 0, 2)), self.idem, self.gens,
                [tuple(reversed(w)) for w in self.words], name=_op_name(self.name),
            )
            op._op = self
            self._op = op
        return self._op

    def __repr__(self):
        return f"SCAlgebra({self.name or '?'}, p={self.p}, dim={self.dim}, vertices={len(self.vertices)})"


def _op_name(name: str) -> str:
    if name.endswith("^op"):
        return name[:-3]
    return f"{name}^op" if name else ""


@dataclass(frozen=True)
class Quiver:
    vertices: tuple
    arrows: tuple  # of (name, source, target)

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise SpecError("duplicate vertex names")
        names = [a[0] for a in self.arrows]
        if len(set(names)) != len(names):
            raise SpecError("duplicate arrow names")
        for n, s, t in self.arrows:
            if s not in self.vertices or t not in self.vertices:
                raise SpecError(f"arrow {n!r} has an unknown endpoint")

    def arrow(self, name):
        for a in self.arrows:
            if a[0] == name:
                return a
        raise SpecError(f"unknown arrow {name!r}")


@dataclass(frozen=True)
class Relation:
    terms: tuple  # of (path tuple, coeff int)


class BQAlgebra(SCAlgebra):
    """Path algebra of a quiver modulo relations, with a residue-path basis."""

    def __init__(self, quiver: Quiver, relations, p, paths, table, bound, name=""):
        vidx = {v: i for i, v in enumerate(quiver.vertices)}
        aidx = {a[0]: i for i, a in enumerate(quiver.arrows)}
        self.quiver = quiver
        self.relations = tuple(relations)
        self.paths = tuple(paths)  # ("v",) for the trivial path at v, else arrow names
        self.nilpotency_bound = bound
        src, tgt, idem, labels = [], [], [], []
        pos = {}
        for i, pth in enumerate(self.paths):
            if _is_trivial(pth):
                s = t = vidx[pth[0][1:]]
                idem.append(i)
                labels.append(f"e_{pth[0][1:]}")
            else:
                s = vidx[quiver.arrow(pth[0])[1]]
                t = vidx[quiver.arrow(pth[-1])[2]]
                labels.append("*".join(pth))
            src.append(s)
            tgt.append(t)
            pos[pth] = i
        idem_by_vertex = [None] * len(quiver.vertices)
        for i in idem:
            idem_by_vertex[src[i]] = i
        gens = [pos[(a[0],)] for a in quiver.arrows if (a[0],) in pos]
        words = []
        for pth in self.paths:
            words.append(() if _is_trivial(pth) else tuple(pos[(a,)] for a in pth))
        self.arrow_index = aidx
        super().__init__(p, quiver.vertices, labels, src, tgt, table, idem_by_vertex, gens, words, name)

    def path_index(self, path) -> int:
        return self.paths.index(tuple(path))

    def opposite(self) -> "BQAlgebra":
        if self._op is None:
            q = Quiver(self.quiver.vertices, tuple((n, t, s) for n, s, t in self.quiver.arrows))
            rels = [Relation(tuple((tuple(reversed(pth)), c) for pth, c in r.terms)) for r in self.relations]
            paths = [pth if _is_trivial(pth) else tuple(reversed(pth)) for pth in self.paths]
            op = BQAlgebra(q, rels, self.p, paths, np.transpose(self.table, (1, 0, 2)),
                           self.nilpotency_bound, name=_op_name(self.name))
            op._op = self
            self._op = op
        return self._op

    def __repr__(self):
        return f"BQAlgebra({self.name or '?'}, p={self.p}, dim={self.dim}, vertices={len(self.vertices)})"


def _is_trivial(pth) -> bool:
    return len(pth) == 1 and isinstance(pth[0], str) and pth[0].startswith("@")


def _trivial(v: str) -> tuple:
    return ("@" + v,)


# ------------------------------------------------------------------ building


def _all_paths(quiver: Quiver, max_len: int) -> list[tuple]:
    out = [_trivial(v) for v in quiver.vertices]
    by_src: dict[str, list] = {}
    for n, s, t in quiver.arrows:
        by_src.setdefault(s, []).append((n, t))
    layer = [((n,), t) for n, s, t in quiver.arrows]
    length = 1
    while layer and length <= max_len:
        out.extend(p for p, _ in layer)
        if len(out) > MAX_PATHS:
            raise InfiniteDimensional(f"more than {MAX_PATHS} paths of length <= {length}")
        layer = [(p + (n,), t2) for p, t in layer for n, t2 in by_src.get(t, [])]
        length += 1
    return out


def build_algebra(desc: dict, name: str = "") -> BQAlgebra:
    """Build kQ/I from a parsed description (see ``parse_spec``)."""
    p = int(desc["p"])
    if not el.is_prime(p):
        raise SpecError(f"field.p = {p} is not prime")
    quiver = Quiver(tuple(desc["vertices"]), tuple(tuple(a) for a in desc["arrows"]))
    bound = int(desc.get("nilpotency_bound", 12))
    relations = []
    for r in desc["relations"]:
        terms = []
        for pth, c in r:
            pth = tuple(pth)
            if len(pth) < 2:
                raise NonAdmissible(f"relation path {list(pth)} has length < 2")
            for a, b in zip(pth, pth[1:]):
                if quiver.arrow(a)[2] != quiver.arrow(b)[1]:
                    raise SpecError(f"path {list(pth)} is not composable")
            terms.append((pth, int(c) % p))
        ends = {(quiver.arrow(t[0][0])[1], quiver.arrow(t[0][-1])[2]) for t in terms}
        if len(ends) > 1:
            raise SpecError("relation paths are not parallel")
        relations.append(Relation(tuple(terms)))

    aorder = {a[0]: i for i, a in enumerate(quiver.arrows)}
    vorder = {v: i for i, v in enumerate(quiver.vertices)}

    def sort_key(pth):
        if _is_trivial(pth):
            return (0, (vorder[pth[0][1:]],))
        return (len(pth), tuple(aorder[a] for a in pth))

    for ell in range(1, bound + 1):
        paths = _all_paths(quiver, ell)
        # columns: longest first, so rref pivots are leading terms
        cols = sorted(paths, key=lambda q: (-sort_key(q)[0], sort_key(q)[1]))
        col_of = {q: i for i, q in enumerate(cols)}
        rows = []
        for rel in relations:
            s = quiver.arrow(rel.terms[0][0][0])[1]
            t = quiver.arrow(rel.terms[0][0][-1])[2]
            minlen = min(len(q) for q, _ in rel.terms)
            lefts = [q for q in paths if _path_tgt(quiver, q) == s and _plen(q) + minlen <= ell]
            rights = [q for q in paths if _path_src(quiver, q) == t and _plen(q) + minlen <= ell]
            for u in lefts:
                for w in rights:
                    if _plen(u) + _plen(w) + minlen > ell:
                        continue
                    row = np.zeros(len(cols), dtype=np.int64)
                    for q, c in rel.terms:
                        full = _concat(u, q, w)
                        if len(full) <= ell:
                            row[col_of[full]] = (row[col_of[full]] + c) % p
                    if row.any():
                        rows.append(row)
        red, piv = el.rref_arr(np.array(rows, dtype=np.int64).reshape(-1, len(cols)), p)
        red = red[: len(piv)]
        pivset = set(piv)
        top = [q for q in paths if not _is_trivial(q) and len(q) == ell]
        if all(col_of[q] in pivset for q in top):
            basis = sorted((q for q in paths if col_of[q] not in pivset), key=sort_key)
            return _assemble(quiver, relations, p, basis, cols, col_of, red, piv, ell, bound, name)
    raise InfiniteDimensional(f"relations do not bound path length within {bound}")


def _plen(q) -> int:
    return 0 if _is_trivial(q) else len(q)


def _path_src(quiver, q):
    return q[0][1:] if _is_trivial(q) else quiver.arrow(q[0])[1]


def _path_tgt(quiver, q):
    return q[0][1:] if _is_trivial(q) else quiver.arrow(q[-1])[2]


def _concat(*qs) -> tuple:
    out: tuple = ()
    for q in qs:
        if not _is_trivial(q):
            out += tuple(q)
    if not out:
        return qs[0]
    return out


def _assemble(quiver, relations, p, basis, cols, col_of, red, piv, ell, bound, name):
    bidx = {q: i for i, q in enumerate(basis)}
    row_of_pivot = {pc: r for r, pc in enumerate(piv)}
    n = len(basis)

    def normal_form(q) -> np.ndarray:
        v = np.zeros(n, dtype=np.int64)
        if len(q) > ell and not _is_trivial(q):
            return v
        if q in bidx:
            v[bidx[q]] = 1
            return v
        r = red[row_of_pivot[col_of[q]]]
        # q = -(rest of its row) modulo the ideal
        for c in np.nonzero(r)[0]:
            if c != col_of[q]:
                v[bidx[cols[c]]] = (v[bidx[cols[c]]] - r[c]) % p
        return v

    table = np.zeros((n, n, n), dtype=np.int64)
    for i, a in enumerate(basis):
        for j, b in enumerate(basis):
            if _path_tgt(quiver, a) != _path_src(quiver, b):
                continue
            if _is_trivial(a):
                table[i, j, j] = 1
            elif _is_trivial(b):
                table[i, j, i] = 1
            else:
                table[i, j] = normal_form(_concat(a, b))
    return BQAlgebra(quiver, relations, p, basis, table, bound, name)


# ------------------------------------------------------------------- parsing

_TOP_KEYS = {"field", "quiver", "relations", "nilpotency_bound", "name"}


def parse_spec(text: str) -> dict:
    """Validate the JSON algebra format and flatten it for ``build_algebra``."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(raw, dict):
        raise SpecError("line 1: top level must be an object")
    _only(raw, _TOP_KEYS, "top level")
    for key in ("field", "quiver"):
        if key not in raw:
            raise SpecError(f"missing key {key!r}")
    _only(raw["field"], {"p"}, "field")
    _only(raw["quiver"], {"vertices", "arrows"}, "quiver")
    arrows = []
    for a in raw["quiver"].get("arrows", []):
        _only(a, {"name", "from", "to"}, "arrow")
        arrows.append((str(a["name"]), str(a["from"]), str(a["to"])))
    relations = []
    for r in raw.get("relations", []):
        if not isinstance(r, list):
            raise SpecError("each relation must be a list of terms")
        terms = []
        for t in r:
            _only(t, {"path", "coeff"}, "relation term")
            terms.append((tuple(str(x) for x in t["path"]), int(t.get("coeff", 1))))
        relations.append(terms)
    out = {
        "p": int(raw["field"]["p"]),
        "vertices": [str(v) for v in raw["quiver"]["vertices"]],
        "arrows": arrows,
        "relations": relations,
        "name": str(raw.get("name", "")),
    }
    if "nilpotency_bound" in raw:
        out["nilpotency_bound"] = int(raw["nilpotency_bound"])
    return out


def _only(obj: Any, allowed: set, where: str) -> None:
    if not isinstance(obj, dict):
        raise SpecError(f"{where} must be an object")
    extra = set(obj) - allowed
    if extra:
        raise SpecError(f"unknown key(s) in {where}: {sorted(extra)}")


def load_algebra(path_or_text: str) -> BQAlgebra:
    text = path_or_text
    if not path_or_text.lstrip().startswith("{"):
        with open(path_or_text) as fh:
            text = fh.read()
    desc = parse_spec(text)
    return build_algebra(desc, name=desc["name"])


def spec_to_json(desc: dict) -> dict:
    out = {
        "field": {"p": desc["p"]},
        "quiver": {
            "vertices": list(desc["vertices"]),
            "arrows": [{"name": n, "from": s, "to": t} for n, s, t in desc["arrows"]],
        },
        "relations": [[{"path": list(pth), "coeff": c} for pth, c in r] for r in desc["relations"]],
    }
    if desc.get("name"):
        out["name"] = desc["name"]
    if "nilpotency_bound" in desc:
        out["nilpotency_bound"] = desc["nilpotency_bound"]
    return out


# -------------------------------------------------------------- small zoo


def truncated_polynomial(p: int, n: int) -> BQAlgebra:
    """F_p[x]/(x^n)."""
    desc = {"p": p, "vertices": ["1"], "arrows": [("x", "1", "1")],
            "relations": [[(("x",) * n, 1)]] if n >= 2 else []}
    if n == 1:
        return build_algebra({"p": p, "vertices": ["1"], "arrows": [], "relations": []}, name=f"F{p}")
    return build_algebra(desc, name=f"F{p}[x]/x^{n}")


def field_algebra(p: int) -> BQAlgebra:
    return build_algebra({"p": p, "vertices": ["1"], "arrows": [], "relations": []}, name=f"F{p}")


def linear_a2(p: int) -> BQAlgebra:
    """Path algebra of 1 -> 2."""
    return build_algebra({"p": p, "vertices": ["1", "2"], "arrows": [("a", "1", "2")], "relations": []},
                         name=f"F{p}A2")


def t2_description(alg: BQAlgebra) -> dict:
    q = alg.quiver
    verts = [f"{v}.X" for v in q.vertices] + [f"{v}.Y" for v in q.vertices]
    arrows = [(f"{n}.X", f"{s}.X", f"{t}.X") for n, s, t in q.arrows]
    arrows += [(f"{n}.Y", f"{s}.Y", f"{t}.Y") for n, s, t in q.arrows]
    arrows += [(f"c.{v}", f"{v}.X", f"{v}.Y") for v in q.vertices]
    rels = []
    for side in ("X", "Y"):
        for r in alg.relations:
            rels.append([(tuple(f"{a}.{side}" for a in pth), c) for pth, c in r.terms])
    for n, s, t in q.arrows:
        rels.append([((f"{n}.X", f"c.{t}"), 1), ((f"c.{s}", f"{n}.Y"), alg.p - 1)])
    return {"p": alg.p, "vertices": verts, "arrows": arrows, "relations": rels,
            "nilpotency_bound": alg.nilpotency_bound + 2}


def t2_algebra(alg: BQAlgebra) -> BQAlgebra:
    """Lower-triangular 2x2 matrix algebra over ``alg``: modules are maps X -> Y."""
    key = "t2"
    if key not in alg._cache:
        t2 = build_algebra(t2_description(alg), name=f"T2({alg.name})")
        t2._cache["base"] = alg
        alg._cache[key] = t2
    return alg._cache[key]

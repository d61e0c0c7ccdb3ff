"""Simple Lie algebras over Q from root data.

A Chevalley basis is built with the extraspecial-pair sign convention
(all extraspecial structure constants positive), then each x_{-a} is
rescaled so that the Killing form satisfies kappa(x_a, x_{-a}) = 1.

Basis order: x_{-a} by descending height (x_{-theta} first), then the
simple coroots h_i = H_{beta_i}, then x_a by ascending height.
"""

from __future__ import annotations

import logging
import os
import random
import tempfile
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

from gmpy2 import mpq

from .rootsys import RootSystem, add, build_root_system, is_positive, neg, sub

log = logging.getLogger(__name__)

CACHE_VERSION = "lie-sc v2"
ZERO = mpq(0)
ONE = mpq(1)


class LieAlgebraError(ValueError):
    pass


def _structure_constants(rs: RootSystem) -> dict:
    """N_{a,b} for all pairs of roots with a + b a root (Carter's relations)."""
    pos = rs.positive_roots
    order = rs.positive_index
    roots = rs.root_set
    norm = {a: rs.norm2(a) for a in rs.roots}
    table = {}  # special pairs (a, b), a before b, both positive

    def N(a, b):
        if is_positive(a) and is_positive(b):
            if order[a] < order[b]:
                return table[(a, b)]
            return -table[(b, a)]
        if not is_positive(a) and not is_positive(b):
            return -N(neg(a), neg(b))
        c = neg(add(a, b))
        # N_{a,b}/|c|^2 = N_{b,c}/|a|^2 = N_{c,a}/|b|^2
        if is_positive(b) == is_positive(c):
            v = norm[c] / norm[a] * N(b, c)
        else:
            v = norm[c] / norm[b] * N(c, a)
        assert v.denominator == 1
        return int(v)

    def Nz(a, b):
        s = add(a, b)
        if any(s) and s in roots:
            return N(a, b)
        return 0

    def p_of(a, b):
        p = 0
        c = sub(b, a)
        while c in roots:
            p += 1
            c = sub(c, a)
        return p

    for xi in pos[rs.rank:]:
        pairs = []
        for g in pos:
            if order[g] >= order[xi]:
                break
            d = sub(xi, g)
            if d in roots and is_positive(d) and order[g] < order[d]:
                pairs.append((g, d))
        alpha, beta = pairs[0]
        n_ab = p_of(alpha, beta) + 1
        table[(alpha, beta)] = n_ab
        for g, d in pairs[1:]:
            ng, nd = neg(g), neg(d)
            t1 = Nz(beta, ng) * Nz(alpha, nd)
            t1 = t1 / norm[sub(beta, g)] if t1 else 0
            t2 = Nz(ng, alpha) * Nz(beta, nd)
            t2 = t2 / norm[sub(alpha, g)] if t2 else 0
            # relation (a, b, -g, -d) solved for N_{-g,-d} = -N_{g,d}
            v = norm[xi] * (t1 + t2) / n_ab
            assert v.denominator == 1
            table[(g, d)] = int(v)

    out = {}
    for a in rs.roots:
        for b in rs.roots:
            s = add(a, b)
            if any(s) and s in roots:
                out[(a, b)] = N(a, b)
    return out


@dataclass(eq=False)
class LieAlgebra:
    rs: RootSystem
    brackets: list  # brackets[i][j] = {k: mpq}, full antisymmetric table
    killing_matrix: list = field(repr=False)

    @property
    def dim(self) -> int:
        return 2 * self.rs.n_positive + self.rs.rank

    @property
    def n_positive(self) -> int:
        return self.rs.n_positive

    @property
    def rank(self) -> int:
        return self.rs.rank

    # basis indexing
    def root_index(self, a) -> int:
        n = self.rs.n_positive
        if is_positive(a):
            return n + self.rs.rank + self.rs.positive_index[a]
        return n - 1 - self.rs.positive_index[neg(a)]

    def cartan_index(self, i: int) -> int:
        """Basis index of h_i = H_{beta_i}, i 1-based."""
        return self.rs.n_positive + i - 1

    @cached_property
    def basis_roots(self) -> list:
        """Root attached to each basis index; None on the Cartan part."""
        pos = list(self.rs.positive_roots)
        return [neg(a) for a in reversed(pos)] + [None] * self.rs.rank + pos

    @cached_property
    def basis_labels(self) -> list:
        def fmt(a):
            return "".join(str(c) for c in a) if max(a) < 10 else ",".join(map(str, a))

        n = self.rs.n_positive
        out = ["x-" + fmt(a) for a in reversed(self.rs.positive_roots)]
        out += [f"h{i + 1}" for i in range(self.rs.rank)]
        out += ["x+" + fmt(a) for a in self.rs.positive_roots]
        assert len(out) == 2 * n + self.rs.rank
        return out

    def is_cartan(self, i: int) -> bool:
        return self.basis_roots[i] is None

    @cached_property
    def cartan_indices(self) -> list:
        n = self.rs.n_positive
        return list(range(n, n + self.rs.rank))

    @cached_property
    def positive_indices(self) -> list:
        n, l = self.rs.n_positive, self.rs.rank
        return list(range(n + l, 2 * n + l))

    @cached_property
    def negative_indices(self) -> list:
        return list(range(self.rs.n_positive))

    def coroot(self, a) -> dict:
        """H_a as a sparse vector on h_1..h_l."""
        coords = self.rs.coroot_coordinates(a)
        return {self.cartan_index(i + 1): mpq(c) for i, c in enumerate(coords) if c}

    def weight(self, i: int):
        """Root of basis element i, or the zero weight on the Cartan part."""
        a = self.basis_roots[i]
        return a if a is not None else (0,) * self.rs.rank

    def root_value(self, a, h: dict) -> mpq:
        """a(h) for a Cartan vector h = sum c_i h_i."""
        total = ZERO
        for idx, c in h.items():
            if not self.is_cartan(idx):
                raise LieAlgebraError("root_value expects a Cartan vector")
            total += c * self.rs.evaluate(a, idx - self.rs.n_positive)
        return total

    # products
    def _check(self, x: dict) -> dict:
        if not isinstance(x, dict):
            x = as_vector(x, self.dim)
        for i in x:
            if not 0 <= i < self.dim:
                raise LieAlgebraError(f"basis index {i} outside 0..{self.dim - 1}")
        return x

    def bracket(self, x, y) -> dict:
        x = self._check(x)
        y = self._check(y)
        out = {}
        br = self.brackets
        for i, a in x.items():
            row = br[i]
            for j, b in y.items():
                for k, c in row[j].items():
                    v = out.get(k, ZERO) + a * b * c
                    if v:
                        out[k] = v
                    else:
                        out.pop(k, None)
        return out

    def killing(self, x, y) -> mpq:
        x = self._check(x)
        y = self._check(y)
        K = self.killing_matrix
        return sum((a * b * K[i][j] for i, a in x.items() for j, b in y.items()), ZERO)

    def adjoint_matrix(self, i: int) -> list:
        """Dense matrix of ad x_i; column j is [x_i, x_j]."""
        M = [[ZERO] * self.dim for _ in range(self.dim)]
        for j in range(self.dim):
            for k, c in self.brackets[i][j].items():
                M[k][j] = c
        return M

    @cached_property
    def ad_columns(self) -> list:
        """ad_columns[i][j] = tuple of (k, c) with [x_i, x_j] = sum c x_k."""
        return [
            [tuple(sorted(self.brackets[i][j].items())) for j in range(self.dim)]
            for i in range(self.dim)
        ]


def as_vector(x, dim: int) -> dict:
    if len(x) != dim:
        raise LieAlgebraError(f"expected a vector of length {dim}, got {len(x)}")
    return {i: mpq(c) for i, c in enumerate(x) if c}


def trace_form(brackets: list, dim: int) -> list:
    """Gram matrix of tr(ad x ad y) from a bracket table."""
    K = [[ZERO] * dim for _ in range(dim)]
    for i in range(dim):
        for j in range(i, dim):
            t = ZERO
            bi, bj = brackets[i], brackets[j]
            for m in range(dim):
                col = bj[m]
                if not col:
                    continue
                for k, c in col.items():
                    d = bi[k].get(m)
                    if d:
                        t += c * d
            K[i][j] = K[j][i] = t
    return K


def _chevalley_table(rs: RootSystem) -> list:
    """Integer bracket table on e_a (a in R), h_i = H_{beta_i}, in our basis order."""
    n, l = rs.n_positive, rs.rank
    dim = 2 * n + l
    pos = rs.positive_roots

    def idx(a):
        return n + l + rs.positive_index[a] if is_positive(a) else n - 1 - rs.positive_index[neg(a)]

    Nab = _structure_constants(rs)
    br = [[{} for _ in range(dim)] for _ in range(dim)]
    roots = list(pos) + [neg(a) for a in pos]
    for a in roots:
        i = idx(a)
        for b in roots:
            j = idx(b)
            if a == neg(b):
                coords = rs.coroot_coordinates(a) if is_positive(a) else tuple(
                    -c for c in rs.coroot_coordinates(b)
                )
                br[i][j] = {n + m: mpq(c) for m, c in enumerate(coords) if c}
            elif (a, b) in Nab:
                br[i][j] = {idx(add(a, b)): mpq(Nab[(a, b)])}
        for m in range(l):
            v = rs.evaluate(a, m)
            if v:
                br[n + m][i] = {i: mpq(v)}
                br[i][n + m] = {i: mpq(-v)}
    return br


def _rescale(rs: RootSystem, br: list) -> list:
    n, l = rs.n_positive, rs.rank
    dim = 2 * n + l
    K = trace_form(br, dim)
    scale = [ONE] * dim
    for r in range(n):
        c = K[n + l + r][n - 1 - r]
        if c <= 0:
            raise LieAlgebraError(f"kappa(e_a, e_-a) = {c} is not positive")
        scale[n - 1 - r] = 1 / c
    out = [[{} for _ in range(dim)] for _ in range(dim)]
    for i in range(dim):
        for j in range(dim):
            if br[i][j]:
                s = scale[i] * scale[j]
                out[i][j] = {k: s * c / scale[k] for k, c in br[i][j].items()}
    return out


def jacobi_violations(L: LieAlgebra, triples) -> list:
    bad = []
    for i, j, k in triples:
        xi, xj, xk = {i: ONE}, {j: ONE}, {k: ONE}
        s = {}
        for a, b, c in ((xi, xj, xk), (xj, xk, xi), (xk, xi, xj)):
            for key, v in L.bracket(a, L.bracket(b, c)).items():
                s[key] = s.get(key, ZERO) + v
        if any(s.values()):
            bad.append((i, j, k))
    return bad


def check_jacobi(L: LieAlgebra, exhaustive_limit: int = 60, samples: int = 4000, seed: int = 0) -> list:
    """Jacobi violations on all triples (small algebras) or a random sample."""
    dim = L.dim
    if dim <= exhaustive_limit:
        triples = [(i, j, k) for i in range(dim) for j in range(i + 1, dim) for k in range(j + 1, dim)]
    else:
        rng = random.Random(seed)
        triples = [tuple(rng.sample(range(dim), 3)) for _ in range(samples)]
    return jacobi_violations(L, triples)


# cache

def cache_dir() -> Path:
    env = os.environ.get("LIE_SC_CACHE_DIR")
    if env:
        return Path(env)
    return Path(os.environ.get("XDG_CACHE_HOME", Path.home() / ".cache")) / "liewedge"


def cache_path(rs: RootSystem) -> Path:
    return cache_dir() / f"{rs.type_label}{rs.rank}.lie-sc"


def dumps_brackets(rs: RootSystem, brackets: list) -> str:
    lines = [f"{CACHE_VERSION} {rs.type_label} {rs.rank}"]
    dim = len(brackets)
    for i in range(dim):
        for j in range(i + 1, dim):
            col = brackets[i][j]
            if col:
                terms = ", ".join(f"{k}={_fmt(c)}" for k, c in sorted(col.items()))
                lines.append(f"{i} {j} : {terms}")
    return "\n".join(lines) + "\n"


def _fmt(c) -> str:
    return f"{c.numerator}/{c.denominator}"


def loads_brackets(rs: RootSystem, text: str) -> list:
    lines = text.splitlines()
    header = f"{CACHE_VERSION} {rs.type_label} {rs.rank}"
    if not lines or lines[0].strip() != header:
        raise LieAlgebraError(f"bad cache header {lines[0]!r} (expected {header!r})" if lines else "empty cache")
    dim = rs.dim
    br = [[{} for _ in range(dim)] for _ in range(dim)]
    for line in lines[1:]:
        if not line.strip():
            continue
        head, _, body = line.partition(":")
        i, j = map(int, head.split())
        col = {}
        for term in body.split(","):
            k, _, q = term.strip().partition("=")
            col[int(k)] = mpq(q)
        br[i][j] = col
        br[j][i] = {k: -c for k, c in col.items()}
    return br


def _write_atomic(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=path.name, dir=path.parent)
    try:
        with os.fdopen(fd, "w", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def build_algebra(rs: RootSystem | tuple, use_cache: bool = False, check: bool = True) -> LieAlgebra:
    """Construct g with kappa(x_a, x_{-a}) = 1 on the fixed basis.

    With use_cache, the rescaled bracket table is read from (or written to)
    the structure-constant cache.
    """
    if isinstance(rs, tuple):
        rs = build_root_system(*rs)
    brackets = None
    path = cache_path(rs) if use_cache else None
    if path is not None and path.exists():
        brackets = loads_brackets(rs, path.read_text())
        fresh = False
    else:
        brackets = _rescale(rs, _chevalley_table(rs))
        fresh = True
    L = LieAlgebra(rs, brackets, trace_form(brackets, rs.dim))
    if check and fresh:
        bad = check_jacobi(L)
        if bad:
            raise LieAlgebraError(f"{rs.label}: Jacobi identity fails on {len(bad)} triples, e.g. {bad[0]}")
    for r in range(rs.n_positive):
        if L.killing_matrix[L.positive_indices[r]][rs.n_positive - 1 - r] != 1:
            raise LieAlgebraError(f"{rs.label}: normalisation kappa(x_a, x_-a) = 1 failed")
    if path is not None and fresh:
        _write_atomic(path, dumps_brackets(rs, brackets))
        log.debug("wrote %s", path)
    return L


_ALGEBRAS: dict = {}


def algebra(type_label: str, rank: int) -> LieAlgebra:
    """Memoised build_algebra for the (type, rank) pair."""
    key = (type_label, rank)
    if key not in _ALGEBRAS:
        _ALGEBRAS[key] = build_algebra(build_root_system(type_label, rank))
    return _ALGEBRAS[key]

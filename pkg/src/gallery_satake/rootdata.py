"""Based root data with a fixed inertia automorphism, and the derived
relative (echelonnage) data.

The absolute datum lives on a cocharacter lattice with a fixed basis:
roots are integer functionals (row vectors), coroots integer vectors.
Passing to coinvariants under the automorphism yields the relative
lattice, the relative roots with their rational pairing, the coroot
images normalized to pair to 2, and the jump of each wall family.
All arithmetic is exact (Fraction); no floats anywhere.
"""

import json
from dataclasses import dataclass, field
from fractions import Fraction

from . import _linalg as la


class TorsionError(Exception):
    """Coinvariant lattice has torsion (datum outside supported scope)."""


class PresetError(Exception):
    """Unknown preset, or jump data neither tabulated nor overridden."""


def _parse_fraction(x):
    if isinstance(x, str):
        return Fraction(x)
    return Fraction(x)


@dataclass(frozen=True)
class BasedRootDatum:
    """Absolute based root datum with a pinned automorphism.

    rank is the dimension of the cocharacter lattice; simple_roots are
    functionals on it, simple_coroots lattice vectors, and automorphism
    a lattice automorphism permuting the simple roots and coroots by
    the same index permutation.
    """

    name: str
    rank: int
    simple_roots: tuple
    simple_coroots: tuple
    cartan: tuple
    automorphism: tuple
    perm: tuple

    def __post_init__(self):
        n = len(self.simple_roots)
        for i in range(n):
            for j in range(n):
                pairing = la.dot(self.simple_roots[i], self.simple_coroots[j])
                if pairing != self.cartan[i][j]:
                    raise ValueError("pairing disagrees with Cartan matrix")
        _check_cartan_finite_type(self.cartan)
        _check_automorphism(self)


def _check_cartan_finite_type(cartan):
    n = len(cartan)
    for i in range(n):
        if cartan[i][i] != 2:
            raise ValueError("Cartan diagonal must be 2")
        for j in range(n):
            if i != j:
                if cartan[i][j] > 0:
                    raise ValueError("off-diagonal Cartan entries must be <= 0")
                if cartan[i][j] * cartan[j][i] >= 4:
                    raise ValueError("Cartan product >= 4: not finite type")
    # positive definiteness of the symmetrization pins finite type exactly
    d = _symmetrizers(cartan)
    sym = [[Fraction(d[i] * cartan[i][j]) for j in range(n)] for i in range(n)]
    for k in range(1, n + 1):
        sub = [row[:k] for row in sym[:k]]
        if _det(sub) <= 0:
            raise ValueError("Cartan matrix is not of finite type")


def _det(m):
    n = len(m)
    a = [list(map(Fraction, row)) for row in m]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        inv = 1 / a[col][col]
        for r in range(col + 1, n):
            if a[r][col] != 0:
                factor = a[r][col] * inv
                a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
    return det


def _symmetrizers(cartan):
    """Positive rationals d_i with d_i c_ij = d_j c_ji."""
    n = len(cartan)
    d = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if cartan[i][j] != 0 and i != j and d[j] is None:
                    d[j] = d[i] * Fraction(cartan[i][j], cartan[j][i])
                    stack.append(j)
    return d


def _check_automorphism(datum):
    sigma = datum.automorphism
    n = datum.rank
    power = la.identity(n)
    order = 0
    for k in range(1, 7):
        power = la.mat_mul(sigma, power)
        if power == la.identity(n):
            order = k
            break
    if order == 0 or 6 % order != 0:
        raise ValueError("automorphism order must divide 6")
    for i, root in enumerate(datum.simple_roots):
        target = datum.simple_roots[datum.perm[i]]
        # sigma acts on functionals by precomposition with its inverse
        moved = la.mat_vec(la.transpose(sigma), target)
        if tuple(moved) != tuple(root):
            raise ValueError("automorphism does not permute simple roots as declared")
    for i, coroot in enumerate(datum.simple_coroots):
        if la.mat_vec(sigma, coroot) != tuple(datum.simple_coroots[datum.perm[i]]):
            raise ValueError("automorphism does not permute simple coroots as declared")


def coinvariants(datum):
    """Quotient of the cocharacter lattice by (sigma - id).

    Returns (rank, quotient_map) where quotient_map is an integer matrix
    sending old coordinates to coordinates on the coinvariant lattice.
    Raises TorsionError when the quotient has torsion.
    """
    n = datum.rank
    sigma_minus_id = tuple(
        tuple(datum.automorphism[i][j] - (1 if i == j else 0) for j in range(n))
        for i in range(n)
    )
    u, d, _v = la.diagonalize_integer(sigma_minus_id)
    torsion = [int(d[i][i]) for i in range(n) if abs(d[i][i]) > 1]
    if torsion:
        raise TorsionError(
            f"coinvariants of preset {datum.name!r} have torsion {torsion}"
        )
    free_rows = [u[i] for i in range(n) if d[i][i] == 0] + [
        u[i] for i in range(n, len(u))
    ]
    qmap = tuple(tuple(int(x) for x in row) for row in free_rows)
    return len(qmap), qmap


@dataclass(frozen=True)
class RelativeRoot:
    """A relative root: rational functional on the coinvariant lattice,
    its coroot image, and the jump of its wall family."""

    functional: tuple
    coroot: tuple
    jump: Fraction

    def pair(self, x):
        return la.dot(self.functional, x)


@dataclass
class RelativeRootDatum:
    """Relative root datum on the coinvariant lattice.

    positive_roots holds the nondivisible positive relative roots; walls
    along root a sit at levels in jump(a) * Z of the functional of a.
    """

    name: str
    datum: BasedRootDatum
    rank: int
    quotient_map: tuple
    simple: tuple  # tuple of RelativeRoot
    positive_roots: tuple  # tuple of RelativeRoot, simple first
    two_rho: tuple  # rational functional
    _caches: dict = field(default_factory=dict, repr=False)

    # -- basic pairing helpers -------------------------------------------

    def pair(self, functional, x):
        return la.dot(functional, x)

    def rho_pair(self, x):
        """<rho, x> as an exact Fraction (half of <2rho, x>)."""
        return la.dot(self.two_rho, x) / 2

    def two_rho_pair(self, x):
        return la.dot(self.two_rho, x)

    def reflect(self, root, x):
        """s_root(x) = x - <root, x> root^vee."""
        c = root.pair(x)
        return tuple(xi - c * ci for xi, ci in zip(x, root.coroot))

    def is_dominant(self, x):
        return all(a.pair(x) >= 0 for a in self.simple)

    # -- Weyl group as matrices ------------------------------------------

    def reflection_matrix(self, root):
        n = self.rank
        cols = []
        for j in range(n):
            e = tuple(Fraction(1 if i == j else 0) for i in range(n))
            cols.append(self.reflect(root, e))
        m = tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))
        if not all(la.is_integral(row) for row in m):
            raise ValueError("reflection does not preserve the lattice")
        return tuple(tuple(int(x) for x in row) for row in m)

    def weyl_group(self):
        """All finite Weyl group elements as matrices, identity first."""
        if "weyl" in self._caches:
            return self._caches["weyl"]
        gens = [self.reflection_matrix(a) for a in self.simple]
        ident = tuple(tuple(int(i == j) for j in range(self.rank)) for i in range(self.rank))
        seen = {ident}
        order = [ident]
        frontier = [ident]
        while frontier:
            nxt = []
            for w in frontier:
                for g in gens:
                    prod = tuple(
                        tuple(sum(g[i][k] * w[k][j] for k in range(self.rank))
                              for j in range(self.rank))
                        for i in range(self.rank)
                    )
                    if prod not in seen:
                        seen.add(prod)
                        order.append(prod)
                        nxt.append(prod)
            frontier = nxt
            if len(seen) > 200000:
                raise ValueError("finite Weyl group cap exceeded")
        self._caches["weyl"] = order
        return order

    def act_weyl(self, w, x):
        return tuple(
            sum(Fraction(w[i][j]) * x[j] for j in range(self.rank))
            for i in range(self.rank)
        )

    # -- dominance ---------------------------------------------------------

    def dominant_rep(self, nu):
        """The dominant representative of W0.nu and a minimal-length w
        with w(nu) dominant, as a matrix."""
        nu = tuple(Fraction(x) for x in nu)
        ident = tuple(tuple(int(i == j) for j in range(self.rank)) for i in range(self.rank))
        w = ident
        cur = nu
        while True:
            idx = next(
                (i for i, a in enumerate(self.simple) if a.pair(cur) < 0), None
            )
            if idx is None:
                break
            mat = self.reflection_matrix(self.simple[idx])
            cur = self.reflect(self.simple[idx], cur)
            w = tuple(
                tuple(sum(mat[i][k] * w[k][j] for k in range(self.rank))
                      for j in range(self.rank))
                for i in range(self.rank)
            )
        # peel stabilizer generators of the dominant point from the left
        changed = True
        while changed:
            changed = False
            for i, a in enumerate(self.simple):
                if a.pair(cur) == 0:
                    mat = self.reflection_matrix(self.simple[i])
                    cand = tuple(
                        tuple(sum(mat[i2][k] * w[k][j] for k in range(self.rank))
                              for j in range(self.rank))
                        for i2 in range(self.rank)
                    )
                    if self._w0_length(cand) < self._w0_length(w):
                        w = cand
                        changed = True
        return cur, w

    def _w0_length(self, w):
        """Number of positive relative roots sent negative by w^{-1}."""
        count = 0
        for a in self.positive_roots:
            # a composed with w: functional x -> a(w x)
            moved = tuple(
                sum(a.functional[i] * Fraction(w[i][j]) for i in range(self.rank))
                for j in range(self.rank)
            )
            if not self._functional_is_positive(moved):
                count += 1
        return count

    def _functional_is_positive(self, functional):
        coeffs = self._simple_coordinates(functional)
        return all(c >= 0 for c in coeffs)

    def _simple_coordinates(self, functional):
        key = "simple_coords_basis"
        if key not in self._caches:
            rows = [list(a.functional) for a in self.simple]
            self._caches[key] = rows
        rows = self._caches[key]
        sol = la.solve_general(la.transpose(la.mat(rows)), functional)
        if sol is None:
            raise ValueError("functional outside the relative root span")
        return sol

    def dominance_leq(self, nu, mu):
        """nu <= mu iff mu - nu is a nonnegative integer combination of
        simple coroot images."""
        diff = la.vec_sub(tuple(map(Fraction, mu)), tuple(map(Fraction, nu)))
        cols = la.transpose(tuple(a.coroot for a in self.simple))
        sol = la.solve_general(cols, diff)
        if sol is None:
            return False
        return all(c.denominator == 1 and c >= 0 for c in sol)

    # -- consistency -------------------------------------------------------

    def validate(self):
        for a in self.positive_roots:
            if la.dot(a.functional, a.coroot) != 2:
                raise ValueError("<a, a^vee> != 2")
            tr = self.two_rho_pair(a.coroot)
            if tr.denominator != 1 or tr < 0 or int(tr) % 2 != 0:
                raise ValueError("<2rho, a^vee> must be an even nonnegative integer")
        roots = {a.functional for a in self.positive_roots}
        roots |= {tuple(-x for x in a.functional) for a in self.positive_roots}
        for a in self.positive_roots:
            for b in self.positive_roots:
                img = tuple(
                    bi - la.dot(b.functional, a.coroot) * ai
                    for bi, ai in zip(b.functional, a.functional)
                )
                if img not in roots:
                    raise ValueError("reflection does not stabilize the root set")
        # coinvariance of the quotient map
        q = la.mat(self.quotient_map)
        if la.mat_mul(q, la.mat(self.datum.automorphism)) != q:
            raise ValueError("quotient map is not coinvariant")
        self.weyl_group()
        return True


def _descend_functional(datum, qmap, functional):
    """Express a sigma-invariant functional through the quotient map."""
    sol = la.solve_general(la.transpose(la.mat(qmap)), functional)
    if sol is None:
        raise ValueError("functional is not sigma-invariant")
    return sol


def relative_data(datum, jump_override=None):
    """Derive the relative root datum from an absolute one.

    Simple relative roots come from automorphism orbits of simple roots:
    orbits of pairwise-orthogonal roots restrict to the sum pattern, and
    an adjacent swapped pair restricts to the ramified rank-one pattern.
    Coroot images are normalized so that <a, a^vee> = 2; jumps default
    to 1 in this normalization and may be overridden per simple root.
    """
    k, qmap = coinvariants(datum)
    n = len(datum.simple_roots)
    perm = datum.perm
    seen = set()
    orbits = []
    for i in range(n):
        if i in seen:
            continue
        orbit = [i]
        seen.add(i)
        j = perm[i]
        while j != i:
            orbit.append(j)
            seen.add(j)
            j = perm[j]
        orbits.append(sorted(orbit))

    qm = la.mat(qmap)
    simple = []
    for orbit in orbits:
        connected = any(
            datum.cartan[i][j] != 0
            for i in orbit
            for j in orbit
            if i != j
        )
        functional_abs = tuple(
            sum(Fraction(datum.simple_roots[i][j]) for i in orbit)
            for j in range(datum.rank)
        )
        functional = _descend_functional(datum, qmap, functional_abs)
        # the orbit's coroots share one image in the coinvariants
        coroot = la.mat_vec(qm, datum.simple_coroots[orbit[0]])
        if connected:
            # adjacent swapped pair (ramified odd-unitary pattern)
            if len(orbit) != 2:
                raise ValueError("connected orbits other than pairs unsupported")
            functional = la.vec_scale(2, functional)
        if la.dot(functional, coroot) != 2:
            raise ValueError("orbit folding failed to normalize <a, a^vee> = 2")
        if not la.is_integral(coroot):
            raise ValueError("coroot image is not integral")
        jump = Fraction(1)
        simple.append(RelativeRoot(tuple(functional), tuple(coroot), jump))

    if jump_override:
        simple = [
            RelativeRoot(a.functional, a.coroot, _parse_fraction(jump_override.get(str(i), jump_override.get(i, a.jump))))
            for i, a in enumerate(simple)
        ]

    # close the simple roots under the finite reflections
    roots = {(a.functional, a.coroot): a for a in simple}
    frontier = list(roots)
    while frontier:
        nxt = []
        for key in frontier:
            b = roots[key]
            for a in simple:
                c = la.dot(b.functional, a.coroot)
                new_fun = tuple(
                    bi - c * ai for bi, ai in zip(b.functional, a.functional)
                )
                cb = la.dot(a.functional, b.coroot)
                new_cor = tuple(
                    bi - cb * ai for bi, ai in zip(b.coroot, a.coroot)
                )
                new_key = (new_fun, new_cor)
                if new_key not in roots:
                    roots[new_key] = RelativeRoot(new_fun, new_cor, b.jump)
                    nxt.append(new_key)
        frontier = nxt
        if len(roots) > 4096:
            raise ValueError("relative root closure cap exceeded")

    rel = RelativeRootDatum(
        name=datum.name,
        datum=datum,
        rank=k,
        quotient_map=qmap,
        simple=tuple(simple),
        positive_roots=(),
        two_rho=(),
    )
    positive = []
    for key, root in roots.items():
        coords = rel._simple_coordinates(root.functional)
        if all(c >= 0 for c in coords):
            positive.append(root)
    # discard divisible roots, should any arise
    functionals = {a.functional for a in positive}
    positive = [
        a
        for a in positive
        if tuple(x / 2 for x in a.functional) not in functionals
    ]
    positive.sort(key=lambda a: (sum(rel._simple_coordinates(a.functional)), a.functional))
    two_rho = tuple(
        sum(a.functional[j] / a.jump for a in positive)
        for j in range(k)
    )
    rel.positive_roots = tuple(positive)
    rel.two_rho = two_rho
    rel.validate()
    return rel


# ---------------------------------------------------------------------------
# presets

_SPLIT_CARTANS = {
    "a1": [[2]],
    "a2": [[2, -1], [-1, 2]],
    "a3": [[2, -1, 0], [-1, 2, -1], [0, -1, 2]],
    "b2": [[2, -2], [-1, 2]],
    "c2": [[2, -1], [-2, 2]],
    "g2": [[2, -1], [-3, 2]],
    "d4": [
        [2, 0, -1, 0],
        [0, 2, -1, 0],
        [-1, -1, 2, -1],
        [0, 0, -1, 2],
    ],
}

_BUILTIN_PRESETS = {}
for _name, _cartan in _SPLIT_CARTANS.items():
    _BUILTIN_PRESETS[_name] = {
        "name": _name,
        "cartan_matrix": _cartan,
        "automorphism": list(range(len(_cartan))),
        "lattice": "coroot",
    }
_BUILTIN_PRESETS["pgl2"] = {
    "name": "pgl2",
    "cartan_matrix": [[2]],
    "automorphism": [0],
    "lattice": "coweight",
}
_BUILTIN_PRESETS["su3"] = {
    "name": "su3",
    "cartan_matrix": _SPLIT_CARTANS["a2"],
    "automorphism": [1, 0],
    "lattice": "coroot",
}
_BUILTIN_PRESETS["a3-twisted"] = {
    "name": "a3-twisted",
    "cartan_matrix": _SPLIT_CARTANS["a3"],
    "automorphism": [2, 1, 0],
    "lattice": "coroot",
}
_BUILTIN_PRESETS["d4-triality"] = {
    "name": "d4-triality",
    "cartan_matrix": _SPLIT_CARTANS["d4"],
    # nodes 0,1,3 are the outer legs, node 2 the center
    "automorphism": [1, 3, 2, 0],
    "lattice": "coroot",
}

PRESET_NAMES = tuple(sorted(_BUILTIN_PRESETS))


def datum_from_config(config):
    cartan = tuple(tuple(int(x) for x in row) for row in config["cartan_matrix"])
    n = len(cartan)
    perm = tuple(int(i) for i in config.get("automorphism", range(n)))
    lattice = config.get("lattice", "coroot")
    sigma = tuple(tuple(int(perm[j] == i) for j in range(n)) for i in range(n))
    if lattice == "coroot":
        simple_coroots = tuple(
            tuple(int(i == j) for i in range(n)) for j in range(n)
        )
        simple_roots = tuple(tuple(cartan[i][j] for j in range(n)) for i in range(n))
    elif lattice == "coweight":
        # basis of fundamental coweights: roots become coordinate functionals
        simple_roots = tuple(
            tuple(int(i == j) for j in range(n)) for i in range(n)
        )
        simple_coroots = tuple(
            tuple(cartan[i][j] for i in range(n)) for j in range(n)
        )
    else:
        raise PresetError(f"unsupported lattice spec {lattice!r}")
    return BasedRootDatum(
        name=config.get("name", "custom"),
        rank=n,
        simple_roots=simple_roots,
        simple_coroots=simple_coroots,
        cartan=cartan,
        automorphism=sigma,
        perm=perm,
    )


def load_preset(name_or_path, jump_override=None):
    """Load a built-in preset by name, or a JSON preset file by path."""
    if name_or_path in _BUILTIN_PRESETS:
        config = dict(_BUILTIN_PRESETS[name_or_path])
    else:
        try:
            with open(name_or_path) as handle:
                config = json.load(handle)
        except OSError as exc:
            raise PresetError(f"unknown preset {name_or_path!r}") from exc
    override = dict(config.get("jumps", {}))
    if jump_override:
        override.update(jump_override)
    datum = datum_from_config(config)
    return relative_data(datum, jump_override=override or None)

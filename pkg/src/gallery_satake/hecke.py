"""The generic Hecke layer.

Elements of the generic Iwahori-Hecke algebra are finitely supported
maps from the extended affine group to Laurent polynomials in q, with
multiplication driven by the braid and quadratic relations.  On top of
that sit the Bernstein elements, the q-twisted transform into the group
algebra of the coweight lattice, the orbit-sum basis of its image, and
the spherical structure constants.

Normalization of the Bernstein elements: writing any nu as a difference
nu1 - nu2 of dominants, the product T(t_nu1) T(t_nu2)^{-1} does not
depend on the decomposition; E(nu) rescales it to match T(t_nu) on
dominants and q^l T(t_{-nu})^{-1} on antidominants.
"""

from fractions import Fraction

from . import _linalg as la
from .characters import char_from_ls, tensor_decompose
from .poly import LaurentPoly, NegativeExponent, ONE, Q


class HalfIntegerTwist(Exception):
    """A q-exponent that should be integral is not."""


# ---------------------------------------------------------------------------
# Hecke algebra elements: dict AffineElement -> LaurentPoly


def unit_element(ctx):
    return {ctx.identity: ONE}


def basis_element(ctx, x, coeff=None):
    return {x: ONE if coeff is None else coeff}


def add(x, y):
    out = dict(x)
    for k, v in y.items():
        s = out.get(k, LaurentPoly()) + v
        if s:
            out[k] = s
        elif k in out:
            del out[k]
    return out


def scale(c, x):
    if isinstance(c, int):
        c = LaurentPoly.const(c)
    return {k: c * v for k, v in x.items() if c * v}


def _mul_by_simple(ctx, elt, i):
    """Right multiplication by T_s for the i-th simple affine reflection."""
    s = ctx.simple_reflections[i]
    out = {}

    def accumulate(key, value):
        cur = out.get(key, LaurentPoly()) + value
        if cur:
            out[key] = cur
        elif key in out:
            del out[key]

    for w, c in elt.items():
        ws = w * s
        if ctx.length(ws) > ctx.length(w):
            accumulate(ws, c)
        else:
            accumulate(ws, Q * c)
            accumulate(w, (Q - 1) * c)
    return out


def _mul_by_omega(ctx, elt, omega):
    return {w * omega: c for w, c in elt.items()}


def hecke_mul(ctx, x, y):
    """Product in the generic Iwahori-Hecke algebra."""
    out = {}
    for w2, c2 in y.items():
        word, omega = ctx.reduced_word(w2)
        part = {w1: c1 * c2 for w1, c1 in x.items()}
        part = _mul_by_omega(ctx, part, omega)
        for i in word:
            part = _mul_by_simple(ctx, part, i)
        out = add(out, part)
    return out


def t_inverse(ctx, w):
    """Inverse of a basis element, with coefficients in Z[q, q^{-1}].

    With w = omega s_1 ... s_n reduced, the inverse is the product of the
    letter inverses in reverse order, built here by successive left
    multiplication."""
    word, omega = ctx.reduced_word(w)
    qi = LaurentPoly.q_power(-1)
    out = basis_element(ctx, omega.inverse())
    for i in word:
        s = ctx.simple_reflections[i]
        # T_s^{-1} = q^{-1} T_s + (q^{-1} - 1) T_e
        inv_s = {s: qi, ctx.identity: qi - 1}
        out = hecke_mul(ctx, inv_s, out)
    return out


def equal(x, y):
    return add(x, scale(-1, y)) == {}


# ---------------------------------------------------------------------------
# Bernstein elements


def _regular_dominant(ctx):
    rel = ctx.rel
    cache = rel._caches
    if "regular_dominant" in cache:
        return cache["regular_dominant"]
    from itertools import product as iproduct

    for radius in range(1, 8):
        best = None
        for v in iproduct(range(-radius, radius + 1), repeat=ctx.rank):
            if all(a.pair(v) > 0 for a in rel.simple):
                if best is None or rel.two_rho_pair(v) < rel.two_rho_pair(best):
                    best = v
        if best is not None:
            cache["regular_dominant"] = tuple(best)
            return tuple(best)
    raise RuntimeError("no strictly dominant lattice point found")


def _dominant_decomposition(ctx, nu):
    """nu = nu1 - nu2 with both dominant lattice points."""
    rel = ctx.rel
    reg = _regular_dominant(ctx)
    m = 0
    while True:
        nu2 = tuple(m * r for r in reg)
        nu1 = tuple(a + b for a, b in zip(nu, nu2))
        if rel.is_dominant(nu1):
            return nu1, nu2
        m += 1


def translation_basis(ctx, nu):
    """T(t_nu1) T(t_nu2)^{-1}, independent of the chosen decomposition."""
    nu1, nu2 = _dominant_decomposition(ctx, tuple(int(x) for x in nu))
    t1 = basis_element(ctx, ctx.translation(nu1))
    if not any(nu2):
        return t1
    inv = t_inverse(ctx, ctx.translation(nu2))
    return hecke_mul(ctx, t1, inv)


def bernstein_E(ctx, nu):
    """Bernstein element: T(t_nu) for dominant nu, q^{l(t_nu)} times the
    inverse translation for antidominant nu, interpolated in between."""
    nu = tuple(int(x) for x in nu)
    ell = ctx.length(ctx.translation(nu))
    tr = ctx.rel.two_rho_pair(nu)
    if tr.denominator != 1 or (ell - int(tr)) % 2 != 0:
        raise HalfIntegerTwist("Bernstein exponent is not integral")
    exponent = (ell - int(tr)) // 2
    return scale(LaurentPoly.q_power(exponent), translation_basis(ctx, nu))


def bernstein_map(ctx, nu, via_mu=None):
    """Multiplicative map from the coweight lattice into the Hecke algebra
    (coefficients in Z[q, q^{-1}])."""
    nu = tuple(int(x) for x in nu)
    if via_mu is None:
        tr = ctx.rel.two_rho_pair(nu)
        if tr.denominator != 1:
            raise HalfIntegerTwist("Bernstein exponent is not integral")
        return scale(LaurentPoly.q_power(-int(tr)), translation_basis(ctx, nu))
    mu = tuple(int(x) for x in via_mu)
    rel = ctx.rel
    if not rel.is_dominant(mu):
        raise ValueError("via_mu must be dominant")
    diff = tuple(m - n for m, n in zip(mu, nu))
    if not rel.is_dominant(diff):
        raise ValueError("via_mu - nu must be dominant")
    tr = rel.two_rho_pair(mu)
    e_mu = bernstein_E(ctx, mu)
    e_rest = bernstein_E(ctx, tuple(n - m for n, m in zip(nu, mu)))
    return scale(LaurentPoly.q_power(-int(tr)), hecke_mul(ctx, e_mu, e_rest))


# ---------------------------------------------------------------------------
# group algebra of the coweight lattice over Z[q^{\pm 1}]


def ga_add(x, y):
    out = dict(x)
    for k, v in y.items():
        s = out.get(k, LaurentPoly()) + v
        if s:
            out[k] = s
        elif k in out:
            del out[k]
    return out


def ga_scale(c, x):
    if isinstance(c, int):
        c = LaurentPoly.const(c)
    return {k: c * v for k, v in x.items() if c * v}


def ga_mul(x, y):
    out = {}
    for k1, v1 in x.items():
        for k2, v2 in y.items():
            k = tuple(a + b for a, b in zip(k1, k2))
            s = out.get(k, LaurentPoly()) + v1 * v2
            if s:
                out[k] = s
            elif k in out:
                del out[k]
    return out


def _rho_exponent(ctx, point):
    value = ctx.rel.rho_pair(tuple(map(Fraction, point)))
    if value.denominator != 1:
        raise HalfIntegerTwist(f"twist <rho, {point}> is not an integer")
    return int(value)


def sat_transform(ctx, mu, seed=0):
    """q-twisted transform of the class of the irreducible with highest
    weight mu into the group algebra: weight multiplicities times
    q^{<rho, mu + nu>}."""
    mu = tuple(int(x) for x in mu)
    out = {}
    for nu, mult in char_from_ls(ctx, mu, seed=seed).items():
        exponent = _rho_exponent(ctx, tuple(m + n for m, n in zip(mu, nu)))
        if exponent < 0:
            raise HalfIntegerTwist("negative twist exponent")
        out[nu] = LaurentPoly.q_power(exponent, mult)
    return out


def preset_automorphism_matrix(ctx, perm):
    """Lattice automorphism permuting the simple relative roots as given."""
    rel = ctx.rel
    cols = la.transpose(tuple(a.coroot for a in rel.simple))
    images = la.transpose(tuple(rel.simple[perm[i]].coroot for i in range(len(perm))))
    n = ctx.rank
    out = []
    for i in range(n):
        row = la.solve_general(
            la.transpose(cols), tuple(Fraction(images[i][j]) for j in range(n))
        )
        out.append(row)
    mat = tuple(tuple(int(x) for x in row) for row in out)
    return mat


def vinberg_basis(ctx, lam, sigma=None):
    """Orbit sum with q-twists q^{<rho, lam' - lam>} over the Weyl orbit of
    an antidominant lam; with a preset automorphism, over the orbit under
    its centralizer in the Weyl group."""
    rel = ctx.rel
    lam = tuple(int(x) for x in lam)
    if any(a.pair(lam) > 0 for a in rel.simple):
        raise ValueError("lam must be antidominant")
    group = rel.weyl_group()
    if sigma is not None:
        if rel.act_weyl(sigma, tuple(map(Fraction, lam))) != tuple(map(Fraction, lam)):
            raise ValueError("lam must be fixed by the automorphism")
        group = [
            w
            for w in group
            if _mat_mul_int(sigma, w) == _mat_mul_int(w, sigma)
        ]
    orbit = {}
    for w in group:
        point = tuple(int(x) for x in rel.act_weyl(w, tuple(map(Fraction, lam))))
        if point not in orbit:
            exponent = _rho_exponent(ctx, tuple(p - l for p, l in zip(point, lam)))
            if exponent < 0:
                raise HalfIntegerTwist("negative twist exponent in orbit sum")
            orbit[point] = LaurentPoly.q_power(exponent)
    return orbit


def _mat_mul_int(a, b):
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
        for i in range(n)
    )


def spherical_mul(ctx, mu, lam, seed=0):
    """Structure constants of the spherical algebra in the basis of
    irreducible classes: tensor multiplicities with forced q-twists."""
    mu = tuple(int(x) for x in mu)
    lam = tuple(int(x) for x in lam)
    chars = tensor_decompose(
        ctx, char_from_ls(ctx, mu, seed=seed), char_from_ls(ctx, lam, seed=seed), seed=seed
    )
    out = {}
    for nu, mult in chars.items():
        exponent = _rho_exponent(
            ctx, tuple(m + l - n for m, l, n in zip(mu, lam, nu))
        )
        if exponent < 0:
            raise HalfIntegerTwist("negative twist in spherical product")
        out[nu] = LaurentPoly.q_power(exponent, mult)
    return out


def spherical_to_group_algebra(ctx, coeffs, seed=0):
    """Image of a spherical element (dict of irreducible classes) under
    the transform."""
    out = {}
    for nu, poly in coeffs.items():
        out = ga_add(out, ga_scale(poly, sat_transform(ctx, nu, seed=seed)))
    return out


# ---------------------------------------------------------------------------
# center


def bernstein_image(ctx, mu, seed=0):
    """The central element attached to an irreducible class: transform
    coefficients paired with the multiplicative lattice elements."""
    out = {}
    for nu, poly in sat_transform(ctx, mu, seed=seed).items():
        out = add(out, scale(poly, bernstein_map(ctx, nu)))
    return out


def center_check(ctx, z):
    """Does z commute with every simple generator and every length-zero
    element?"""
    for i in range(len(ctx.simple_reflections)):
        t = basis_element(ctx, ctx.simple_reflections[i])
        if not equal(hecke_mul(ctx, z, t), hecke_mul(ctx, t, z)):
            return False
    for omega in ctx.omega_elements():
        t = basis_element(ctx, omega)
        if not equal(hecke_mul(ctx, z, t), hecke_mul(ctx, t, z)):
            return False
    return True


def is_integral(elt):
    return all(c.min_exponent() is None or c.min_exponent() >= 0 for c in elt.values())


def specialize_hecke(elt, value):
    out = {}
    for k, c in elt.items():
        v = c.specialize(value)
        if v:
            out[k] = v
    return out


def specialize_group_algebra(elt, value):
    out = {}
    for k, c in elt.items():
        v = c.specialize(value)
        if v:
            out[k] = v
    return out

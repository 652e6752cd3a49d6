"""Embedding invariants of local rings at triangular closed points.

A closed point is a maximal ideal in triangular form: u1(x1), u2(x1,x2), ...
each monic in its main variable.  The residue field is then an explicit
tower, the cotangent space is a Groebner dimension count, and base change by
roots of the base variables stays over a rational base field via the
reparametrization t_i = s_i^(p^e_i).
"""

from __future__ import annotations

from dataclasses import dataclass

from . import artin, kaehler
from .errors import (
    ArityMismatch,
    BoundViolated,
    InternalInvariantViolation,
    NotContained,
    NotPrime,
    TriangularizationFailed,
    ZeroDivisorDetected,
)
from contextlib import contextmanager
from .ff_arith import (
    LEX,
    FractionField,
    GroebnerBasis,
    IdealPresentation,
    MultiPoly,
    RatFunc,
    groebner_basis,
    quotient_dim,
    reduce_modulo,
)
from .tower import BaseField, FieldTower, algebraic_layer, tower_extend


@dataclass(frozen=True)
class ClosedPoint:
    """Triangular generators of a maximal ideal of k[x1..xn]."""

    base: BaseField
    varnames: tuple
    generators: tuple

    def __post_init__(self):
        n = len(self.varnames)
        if len(self.generators) != n:
            raise ArityMismatch("need exactly one triangular generator per variable")
        field = self.base.field
        for i, u in enumerate(self.generators):
            if u.arity != n or u.dom != field:
                raise ArityMismatch("generator arity/field mismatch")
            d = u.degree_in(i)
            if d < 1:
                raise ArityMismatch(f"generator {i} must involve its main variable")
            if any(exp[j] for exp in u.terms for j in range(i + 1, n)):
                raise ArityMismatch(f"generator {i} uses a later variable")
            lead = {exp: c for exp, c in u.terms.items() if exp[i] == d}
            if len(lead) != 1:
                raise ArityMismatch(f"generator {i} is not monic in its main variable")
            (exp, c) = next(iter(lead.items()))
            if any(e for j, e in enumerate(exp) if j != i) or not c.is_one:
                raise ArityMismatch(f"generator {i} is not monic in its main variable")

    @property
    def field(self) -> FractionField:
        return self.base.field

    def degrees(self) -> list:
        return [u.degree_in(i) for i, u in enumerate(self.generators)]

    def residue_degree(self) -> int:
        out = 1
        for d in self.degrees():
            out *= d
        return out

    def ideal(self) -> IdealPresentation:
        return IdealPresentation(self.field, self.varnames, self.generators)

    def residue_tower(self) -> tuple:
        """(kappa as a FieldTower over the base, images of x1..xn in kappa)."""
        K = FieldTower(self.base)
        images: list = []
        n = len(self.varnames)
        for i, u in enumerate(self.generators):
            d = u.degree_in(i)
            coeffs_by_deg: dict = {}
            for exp, c in u.terms.items():
                k = exp[i]
                e2 = list(exp)
                e2[i] = 0
                coeffs_by_deg.setdefault(k, {})[tuple(e2)] = c
            values = images + [K.zero] * (n - len(images))

            def ev(terms_dict):
                poly = MultiPoly(self.field, n, dict(terms_dict))
                return poly.evaluate(values, lambda r: K.from_base(r))

            if d == 1:
                low = {k: v for k, v in coeffs_by_deg.items() if k == 0}
                image = -ev(low.get(0, {}))
                images.append(image)
            else:
                minpoly = [ev(coeffs_by_deg.get(j, {})) for j in range(d)]
                K = tower_extend(K, algebraic_layer(K, self.varnames[i], minpoly))
                images = [K.embed(im) for im in images]
                images.append(K.gen(self.varnames[i]))
        return K, [K.embed(im) for im in images]


@dataclass(frozen=True)
class JumpReport:
    """Embedding data before and after a purely inseparable base change."""

    edim_before: int
    edim_after: int
    ejump: int
    ecodim_before: int
    ecodim_after: int
    bound_lemma: int
    bound_theorem: int
    base_dim: int
    satisfied: dict

    def all_satisfied(self) -> bool:
        return all(self.satisfied.values())

    def to_dict(self) -> dict:
        return {
            "edim_before": self.edim_before,
            "edim_after": self.edim_after,
            "ejump": self.ejump,
            "ecodim_before": self.ecodim_before,
            "ecodim_after": self.ecodim_after,
            "bound_lemma": self.bound_lemma,
            "bound_theorem": self.bound_theorem,
            "base_dim": self.base_dim,
            "satisfied": dict(self.satisfied),
        }


@dataclass(frozen=True)
class StabilityReport:
    variable: str
    jumps: tuple
    stable: bool

    def to_dict(self) -> dict:
        return {"variable": self.variable, "jumps": list(self.jumps), "stable": self.stable}


@contextmanager
def _not_prime_on_zero_divisor():
    """Residue-field arithmetic hitting a zero divisor means P was not prime."""
    try:
        yield
    except ZeroDivisorDetected as exc:
        raise NotPrime(f"triangular presentation is not prime: {exc}") from exc


def _check_compatible(I: IdealPresentation, P: ClosedPoint) -> None:
    if I.varnames != P.varnames or I.coeff_field != P.field:
        raise ArityMismatch("ideal and point live in different polynomial rings")


def _require_contained(I: IdealPresentation, P: ClosedPoint) -> GroebnerBasis:
    gb = groebner_basis(P.ideal())
    for g in I.generators:
        if not reduce_modulo(g, gb).is_zero:
            raise NotContained("ideal is not contained in the point's maximal ideal")
    return gb


def edim_at_point(I: IdealPresentation, P: ClosedPoint) -> int:
    """dim over kappa of m/m^2 for the local ring (k[x]/I) at P."""
    _check_compatible(I, P)
    _require_contained(I, P)
    gens = list(P.generators)
    squares = tuple(gens[i] * gens[j] for i in range(len(gens)) for j in range(i, len(gens)))
    ideal2 = IdealPresentation(I.coeff_field, I.varnames, squares + tuple(I.generators), I.order)
    _, vdim = quotient_dim(ideal2)
    if vdim is None:
        raise InternalInvariantViolation("P^2 + I is not zero-dimensional; P is not maximal")
    dk = P.residue_degree()
    if (vdim - dk) % dk:
        raise InternalInvariantViolation("cotangent dimension is not a multiple of the residue degree")
    return (vdim - dk) // dk


def krull_dim(I: IdealPresentation) -> int:
    return quotient_dim(I)[0]


def ecodim_at_point(I: IdealPresentation, P: ClosedPoint) -> int:
    """edim minus the Krull dimension of the quotient (equidimensionality assumed)."""
    value = edim_at_point(I, P) - krull_dim(I)
    if value < 0:
        raise InternalInvariantViolation("negative embedding codimension")
    return value


# -- base change ------------------------------------------------------------


def _new_base_names(base: BaseField, exponents: tuple, forbidden) -> tuple:
    names = []
    for i, name in enumerate(base.varnames):
        if exponents[i] == 0:
            names.append(name)
            continue
        stem = "s" if base.d == 1 else f"s{i + 1}"
        candidate = stem
        while candidate in forbidden or candidate in names or candidate in base.varnames:
            candidate += "_"
        names.append(candidate)
    return tuple(names)


def normalize_exponents(base: BaseField, exponents) -> tuple:
    if isinstance(exponents, dict):
        unknown = set(exponents) - set(base.varnames)
        if unknown:
            raise ArityMismatch(f"unknown base variables {sorted(unknown)}")
        out = tuple(int(exponents.get(v, 0)) for v in base.varnames)
    else:
        out = tuple(int(e) for e in exponents)
        if len(out) != base.d:
            raise ArityMismatch("one exponent per base variable required")
    if any(e < 0 for e in out):
        raise ArityMismatch("exponents must be >= 0")
    return out


def _reparametrized_field(base: BaseField, exponents: tuple, forbidden) -> tuple:
    names = _new_base_names(base, exponents, forbidden)
    return BaseField(base.p, names), names


def _subst_ratfunc(r: RatFunc, scales: tuple, new_field: FractionField) -> RatFunc:
    def remap(exp):
        return tuple(e * s for e, s in zip(exp, scales))

    num = r.num.map_exponents(remap) if not r.num.is_zero else r.num
    den = r.den.map_exponents(remap)
    return RatFunc(num, den)


def _subst_poly(f: MultiPoly, scales: tuple, new_field: FractionField) -> MultiPoly:
    return MultiPoly(
        new_field, f.arity, {exp: _subst_ratfunc(c, scales, new_field) for exp, c in f.terms.items()}
    )


def spec_from_exponents(base: BaseField, exponents: tuple) -> artin.InseparableExtensionSpec:
    field = base.field
    entries = [(field.gen(i), e) for i, e in enumerate(exponents) if e >= 1]
    return artin.InseparableExtensionSpec.of(entries)


def base_change_point(I: IdealPresentation, P: ClosedPoint, exponents) -> tuple:
    """Rewrite (I, P) over k' = k(t_i^(1/p^e_i)); returns (I', P', base')."""
    _check_compatible(I, P)
    base = P.base
    exponents = normalize_exponents(base, exponents)
    if all(e == 0 for e in exponents):
        return I, P, base
    p = base.p
    scales = tuple(p**e for e in exponents)
    new_base, _ = _reparametrized_field(base, exponents, forbidden=set(P.varnames))
    new_field = new_base.field

    new_I = IdealPresentation(
        new_field,
        I.varnames,
        tuple(_subst_poly(g, scales, new_field) for g in I.generators),
        I.order,
    )
    new_P_gens = [_subst_poly(u, scales, new_field) for u in P.generators]

    with _not_prime_on_zero_divisor():
        kappa, _ = P.residue_tower()
        spec = spec_from_exponents(base, exponents)
        structure = artin.base_change_structure(kappa, spec)

    # spec entry index -> base-variable index (entries follow variable order)
    entry_var = [i for i, e in enumerate(exponents) if e >= 1]
    svar = {idx: new_field.gen(entry_var[idx]) for idx in range(len(spec.entries))}
    entry_of_layer = {name: idx for idx, name in structure.adjoined}

    n = len(P.varnames)
    one_poly = MultiPoly.const(new_field, n, new_field.one)

    def const_poly(r: RatFunc) -> MultiPoly:
        return MultiPoly.const(new_field, n, r)

    kappa_var_of_level = {}
    lv = 0
    for i, u in enumerate(P.generators):
        if u.degree_in(i) >= 2:
            lv += 1
            kappa_var_of_level[lv] = i

    L = structure.residue_field

    def pull(level: int, payload) -> tuple:
        """(numerator, denominator) polynomials over the new base."""
        if level == 0:
            return const_poly(_subst_ratfunc(payload, scales, new_field)), one_poly
        layer = L.layers[level - 1]
        if level <= kappa.height:
            var = kappa_var_of_level[level]
            mono = MultiPoly.gen(new_field, n, var)
            num, den = const_poly(new_field.zero), one_poly
            power = one_poly
            for j, coeff in enumerate(payload):
                cn, cd = pull(level - 1, coeff)
                num = num * cd + cn * power * den
                den = den * cd
                power = power * mono
            return num, den
        entry_idx = entry_of_layer[layer.name]
        s = svar[entry_idx]
        num, den = const_poly(new_field.zero), one_poly
        scalar = new_field.one
        for j, coeff in enumerate(payload):
            cn, cd = pull(level - 1, coeff)
            num = num * cd + cn.scale(scalar) * den
            den = den * cd
            scalar = scalar * s
        return num, den

    for rec in structure.nilpotents:
        root = L.embed(rec.root)
        num, den = pull(L.height, root.payload)
        zval = svar[rec.entry_index] ** rec.z_power
        lift = num - den * const_poly(zval)
        new_P_gens.append(lift)

    new_P = _triangularize(new_base, P.varnames, tuple(new_P_gens))
    return new_I, new_P, new_base


def _triangularize(base: BaseField, varnames: tuple, generators: tuple) -> ClosedPoint:
    """Extract triangular monic generators from a maximal ideal via a lex basis."""
    field = base.field
    n = len(varnames)
    # lex with the *last* variable most significant eliminates trailing variables,
    # which is what the triangular shape u_i(x1..xi) needs
    reverse = lambda exp: tuple(reversed(exp))
    rev_gens = tuple(g.map_exponents(reverse) for g in generators if not g.is_zero)
    gb = groebner_basis(IdealPresentation(field, tuple(reversed(varnames)), rev_gens, LEX))
    if gb.is_unit_ideal:
        raise TriangularizationFailed("generators span the unit ideal")
    elements = [g.map_exponents(reverse) for g in gb.generators]

    chosen = []
    for i in range(n):
        best = None
        for g in elements:
            if g.support_vars() - set(range(i + 1)):
                continue
            d = g.degree_in(i)
            if d < 1:
                continue
            lead = {exp: c for exp, c in g.terms.items() if exp[i] == d}
            if len(lead) != 1:
                continue
            exp, c = next(iter(lead.items()))
            if any(e for j, e in enumerate(exp) if j != i) or not c.is_one:
                continue
            if best is None or d < best.degree_in(i):
                best = g
        if best is None:
            raise TriangularizationFailed(f"no monic triangular generator for {varnames[i]}")
        chosen.append(best)

    point = ClosedPoint(base, varnames, tuple(chosen))
    _, vdim = quotient_dim(IdealPresentation(field, varnames, generators))
    if vdim is None or vdim != point.residue_degree():
        raise TriangularizationFailed("triangular candidates do not span the radical")
    return point


# -- jump reports ------------------------------------------------------------


def ejump_at_point(I: IdealPresentation, P: ClosedPoint, exponents) -> JumpReport:
    """Full before/after report with both proved bounds evaluated."""
    _check_compatible(I, P)
    base = P.base
    exponents = normalize_exponents(base, exponents)
    d = base.d

    edim_before = edim_at_point(I, P)
    dim_before = krull_dim(I)
    ecodim_before = edim_before - dim_before

    new_I, new_P, _ = base_change_point(I, P, exponents)
    edim_after = edim_at_point(new_I, new_P)
    dim_after = krull_dim(new_I)
    ecodim_after = edim_after - dim_after

    with _not_prime_on_zero_divisor():
        kappa, _ = P.residue_tower()
        if any(e >= 1 for e in exponents):
            spec = spec_from_exponents(base, exponents)
            bound_lemma = artin.ejump_field(kappa, spec)
        else:
            bound_lemma = 0
        bound_theorem = kaehler.pdeg(kappa, "base") - kaehler.trdeg(kappa, "base")

    ejump = edim_after - edim_before
    satisfied = {
        "nonnegative": 0 <= ejump,
        "lemma": ejump <= bound_lemma,
        "theorem": bound_lemma <= bound_theorem,
        "corollary_edim": edim_after <= edim_before + d,
        "corollary_ecodim": ecodim_after <= d,
    }
    return JumpReport(
        edim_before=edim_before,
        edim_after=edim_after,
        ejump=ejump,
        ecodim_before=ecodim_before,
        ecodim_after=ecodim_after,
        bound_lemma=bound_lemma,
        bound_theorem=bound_theorem,
        base_dim=d,
        satisfied=satisfied,
    )


def verify_bounds(I: IdealPresentation, P: ClosedPoint, exponents, strict: bool = False) -> JumpReport:
    """Evaluate every inequality; in strict mode a violation raises BoundViolated."""
    report = ejump_at_point(I, P, exponents)
    if strict:
        for name, ok in report.satisfied.items():
            if not ok:
                raise BoundViolated(name, f"report: {report.to_dict()}")
    return report


def verify_height_one_stability(
    I: IdealPresentation, P: ClosedPoint, variable: str, n_max: int
) -> StabilityReport:
    """Jumps over t_var^(1/p^n) for n = 1..n_max must all agree."""
    if n_max < 2:
        raise ArityMismatch("n_max must be >= 2")
    base = P.base
    if variable not in base.varnames:
        raise ArityMismatch(f"unknown base variable {variable!r}")
    jumps = []
    for nv in range(1, n_max + 1):
        report = ejump_at_point(I, P, {variable: nv})
        jumps.append(report.ejump)
    return StabilityReport(variable, tuple(jumps), len(set(jumps)) == 1)


def classical_jacobian_edim(I: IdealPresentation, P: ClosedPoint) -> int:
    """Jet-space count n - rank of the classical Jacobian at the point.

    Agrees with edim_at_point exactly at points with separable residue field;
    at inseparable points the naive Jacobian misses cotangent directions.
    """
    _check_compatible(I, P)
    with _not_prime_on_zero_divisor():
        kappa, images = P.residue_tower()
        n = len(P.varnames)
        rows = []
        for g in I.generators:
            row = []
            for j in range(n):
                dg = g.derivative(j)
                row.append(dg.evaluate(images, lambda r: kappa.from_base(r)))
            rows.append(row)
        rank = kaehler._matrix_rank(kappa, rows) if rows else 0
    return n - rank

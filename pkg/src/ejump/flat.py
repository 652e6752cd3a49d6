"""Flat models of towers: finite free modules over a rational scalar field.

A tower K collapses to a module over k0 = F_p(T), where T holds the base
variables together with every transcendental generator; the algebraic
generators index a monomial basis with one triangular monic reduction per
layer.  The same container also models the truncated algebras K[z]/(z^q - a)
needed by the base-change oracle, since those are just extra reduction
layers.

On top of the flat model sits the p-th root solver: z^q = a with q = p^r is
semilinear over k0, and splitting every scalar over the k0^q-basis of
monomials T^mu with exponents below q turns it into an honest linear system
with a unique solution whenever a root exists.  This makes root extraction
total: no presentation is ever rejected.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InternalInvariantViolation, ZeroDivisorDetected
from .ff_arith import FractionField, MultiPoly, RatFunc, poly_lcm
from .tower import TRANSCENDENTAL, FieldTower, TowerElement


@dataclass(frozen=True)
class FlatLayer:
    name: str
    degree: int
    reduction: dict  # coordinates of gen^degree over earlier slots


class FlatAlgebra:
    """Free module over F_p(T) with triangular monic generator reductions."""

    def __init__(self, scalar_field: FractionField, layers: list):
        self.field = scalar_field
        self.layers = list(layers)
        self._gen_power_cache: dict = {}

    @property
    def dimension(self) -> int:
        n = 1
        for layer in self.layers:
            n *= layer.degree
        return n

    def basis(self) -> list:
        exps = [()]
        for layer in self.layers:
            exps = [e + (j,) for e in exps for j in range(layer.degree)]
        return exps

    @property
    def nslots(self) -> int:
        return len(self.layers)

    # -- vector helpers -------------------------------------------------

    def zero(self) -> dict:
        return {}

    def scalar(self, c: RatFunc) -> dict:
        if c.is_zero:
            return {}
        return {(0,) * self.nslots: c}

    def one(self) -> dict:
        return self.scalar(self.field.one)

    def gen(self, slot: int, power: int = 1) -> dict:
        exp = [0] * self.nslots
        exp[slot] = power
        return self.reduce({tuple(exp): self.field.one})

    def add(self, u: dict, v: dict) -> dict:
        out = dict(u)
        for e, c in v.items():
            s = out.get(e, self.field.zero) + c
            if s.is_zero:
                out.pop(e, None)
            else:
                out[e] = s
        return out

    def neg(self, u: dict) -> dict:
        return {e: -c for e, c in u.items()}

    def sub(self, u: dict, v: dict) -> dict:
        return self.add(u, self.neg(v))

    def scale(self, u: dict, c: RatFunc) -> dict:
        if c.is_zero:
            return {}
        return {e: v * c for e, v in u.items()}

    def shift(self, u: dict, slot: int, power: int) -> dict:
        """Multiply by gen(slot)^power assuming no reduction is triggered."""
        if power == 0:
            return dict(u)
        out = {}
        for e, c in u.items():
            e2 = list(e)
            e2[slot] += power
            if e2[slot] >= self.layers[slot].degree:
                raise InternalInvariantViolation("shift crossed a reduction boundary")
            out[tuple(e2)] = c
        return out

    def is_zero(self, u: dict) -> bool:
        return not u

    def eq(self, u: dict, v: dict) -> bool:
        return u == v

    def reduce(self, terms: dict) -> dict:
        """Rewrite exponents exceeding a layer degree through its reduction."""
        work = list(terms.items())
        out: dict = {}
        degrees = [layer.degree for layer in self.layers]
        while work:
            e, c = work.pop()
            if c.is_zero:
                continue
            for slot in range(self.nslots - 1, -1, -1):
                if e[slot] >= degrees[slot]:
                    rem = list(e)
                    rem[slot] -= degrees[slot]
                    for re, rc in self.layers[slot].reduction.items():
                        ne = tuple(a + b for a, b in zip(rem, re))
                        work.append((ne, c * rc))
                    break
            else:
                s = out.get(e, self.field.zero) + c
                if s.is_zero:
                    out.pop(e, None)
                else:
                    out[e] = s
        return out

    def mul(self, u: dict, v: dict) -> dict:
        terms: dict = {}
        for e1, c1 in u.items():
            for e2, c2 in v.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                s = terms.get(e, self.field.zero) + c
                if s.is_zero:
                    terms.pop(e, None)
                else:
                    terms[e] = s
        return self.reduce(terms)

    def pow(self, u: dict, n: int) -> dict:
        result = self.one()
        base = u
        while n:
            if n & 1:
                result = self.mul(result, base)
            n >>= 1
            if n:
                base = self.mul(base, base)
        return result

    def gen_p_power(self, slot: int, r: int) -> dict:
        """gen(slot)^(p^r), cached."""
        key = (slot, r)
        if key not in self._gen_power_cache:
            self._gen_power_cache[key] = self.pow(self.gen(slot), self.field.p**r)
        return self._gen_power_cache[key]

    def invert(self, u: dict):
        """Inverse of u, or None when u is zero or a zero divisor."""
        if not u:
            return None
        basis = self.basis()
        index = {e: i for i, e in enumerate(basis)}
        columns = [self.mul(u, {e: self.field.one}) for e in basis]
        solver = LinearSolver(self.field, len(basis))
        one_exp = (0,) * self.nslots
        for gamma in basis:
            coeffs = [col.get(gamma, self.field.zero) for col in columns]
            rhs = self.field.one if gamma == one_exp else self.field.zero
            if not solver.add_equation(coeffs, rhs):
                return None
        sol = solver.solution()
        if sol is None:
            return None
        out = {}
        for e, c in zip(basis, sol):
            if not c.is_zero:
                out[e] = c
        if not self.eq(self.mul(u, out), self.one()):
            return None
        return out


class LinearSolver:
    """Incremental reduced row echelon form over a fraction field."""

    def __init__(self, scalar_field: FractionField, ncols: int):
        self.field = scalar_field
        self.ncols = ncols
        self.rows: list = []  # (pivot_col, coeffs, rhs), kept fully reduced

    @property
    def rank(self) -> int:
        return len(self.rows)

    def add_equation(self, coeffs: list, rhs: RatFunc) -> bool:
        """Reduce and insert; returns False when the system became inconsistent."""
        coeffs = list(coeffs)
        for pivot_col, row, row_rhs in self.rows:
            c = coeffs[pivot_col]
            if c.is_zero:
                continue
            coeffs = [a - c * b for a, b in zip(coeffs, row)]
            rhs = rhs - c * row_rhs
        pivot = next((i for i, c in enumerate(coeffs) if not c.is_zero), None)
        if pivot is None:
            return rhs.is_zero
        inv = coeffs[pivot].inv()
        coeffs = [c * inv for c in coeffs]
        rhs = rhs * inv
        updated = []
        for pivot_col, row, row_rhs in self.rows:
            c = row[pivot]
            if not c.is_zero:
                row = [a - c * b for a, b in zip(row, coeffs)]
                row_rhs = row_rhs - c * rhs
            updated.append((pivot_col, row, row_rhs))
        self.rows = updated
        self.rows.append((pivot, coeffs, rhs))
        return True

    def solution(self) -> list | None:
        """A solution with free variables set to zero."""
        out = [self.field.zero] * self.ncols
        for pivot_col, _, rhs in self.rows:
            out[pivot_col] = rhs
        return out


# -- building flat models of towers --------------------------------------


@dataclass
class FlatModel:
    tower: FieldTower
    algebra: FlatAlgebra
    t_names: tuple
    base_map: list  # T-index of each base variable
    transc_map: dict  # tower level -> T-index
    slot_map: dict  # tower level -> algebra slot

    def flatten(self, element: TowerElement) -> dict:
        K = self.tower
        if element.tower != K:
            raise InternalInvariantViolation("element does not live in the modelled tower")
        return self._flatten_payload(K.height, element.payload)

    def _flatten_payload(self, level: int, payload) -> dict:
        alg = self.algebra
        if level == 0:
            return alg.scalar(self._extend_ratfunc(payload))
        layer = self.tower.layers[level - 1]
        if layer.kind == TRANSCENDENTAL:
            vidx = self.transc_map[level]
            num = self._upoly_vec(level, payload.num, vidx)
            den = self._upoly_vec(level, payload.den, vidx)
            den_inv = alg.invert(den)
            if den_inv is None:
                raise ZeroDivisorDetected(layer.name, "denominator is a zero divisor in the flat model")
            return alg.mul(num, den_inv)
        slot = self.slot_map[level]
        out = alg.zero()
        for j, coeff in enumerate(payload):
            sub = self._flatten_payload(level - 1, coeff)
            out = alg.add(out, alg.shift(sub, slot, j))
        return out

    def _upoly_vec(self, level: int, coeffs, vidx: int) -> dict:
        alg = self.algebra
        out = alg.zero()
        for j, coeff in enumerate(coeffs):
            sub = self._flatten_payload(level - 1, coeff)
            if j:
                mono = RatFunc.from_poly(
                    MultiPoly.gen(alg.field.prime_field, len(self.t_names), vidx, j)
                )
                sub = alg.scale(sub, mono)
            out = alg.add(out, sub)
        return out

    def _extend_ratfunc(self, r: RatFunc) -> RatFunc:
        d = self.tower.base.d
        total = len(self.t_names)

        def remap(exp):
            out = [0] * total
            for i, e in enumerate(exp):
                out[self.base_map[i]] = e
            return tuple(out)

        if d == total:
            return r
        return RatFunc(r.num.map_exponents(remap), r.den.map_exponents(remap), _normalized=True)

    def scalar_to_tower(self, c: RatFunc) -> TowerElement:
        K = self.tower
        num = self._tpoly_to_tower(c.num)
        den = self._tpoly_to_tower(c.den)
        return num / den

    def _tpoly_to_tower(self, poly: MultiPoly) -> TowerElement:
        K = self.tower
        base_field = K.base.field
        d = K.base.d
        acc = K.zero
        for exp, coeff in sorted(poly.terms.items()):
            # base variables occupy the first d slots of T
            mono = RatFunc.from_poly(
                MultiPoly(base_field.prime_field, d, {tuple(exp[:d]): coeff})
            )
            term = K.from_base(mono)
            for tidx in range(d, len(self.t_names)):
                e = exp[tidx]
                if e:
                    term = term * K.gen(self.t_names[tidx]) ** e
            acc = acc + term
        return acc

    def unflatten(self, vec: dict) -> TowerElement:
        K = self.tower
        acc = K.zero
        slot_gens = {}
        for lv, slot in self.slot_map.items():
            slot_gens[slot] = K.gen(K.layers[lv - 1].name)
        for exp, c in sorted(vec.items()):
            term = self.scalar_to_tower(c)
            for slot, e in enumerate(exp):
                if e:
                    term = term * slot_gens[slot] ** e
            acc = acc + term
        return acc


def flat_model(K: FieldTower) -> FlatModel:
    """Build (and cache) the flat model of a tower."""
    cached = K._cache.get("flat_model")
    if cached is not None:
        return cached
    t_names = list(K.base.varnames)
    base_map = list(range(K.base.d))
    transc_map = {}
    for lv, layer in enumerate(K.layers, start=1):
        if layer.kind == TRANSCENDENTAL:
            transc_map[lv] = len(t_names)
            t_names.append(layer.name)
    scalar_field = FractionField(K.p, tuple(t_names))
    # install every algebraic slot up front so exponent arity is stable, then
    # fill the triangular reductions in layer order (each uses lower slots only)
    algebra = FlatAlgebra(scalar_field, [])
    slot_map = {}
    for lv, layer in enumerate(K.layers, start=1):
        if layer.kind == TRANSCENDENTAL:
            continue
        slot_map[lv] = algebra.nslots
        algebra.layers.append(FlatLayer(layer.name, K.layer_degree(layer), {}))
    model = FlatModel(K, algebra, tuple(t_names), base_map, transc_map, slot_map)
    for lv, layer in enumerate(K.layers, start=1):
        if layer.kind == TRANSCENDENTAL:
            continue
        slot = slot_map[lv]
        reduction = algebra.zero()
        for j, coeff in enumerate(K.minpoly_coeffs(lv)):
            sub = model._flatten_payload(lv - 1, coeff)
            reduction = algebra.add(reduction, algebra.shift(sub, slot, j))
        algebra.layers[slot] = FlatLayer(layer.name, algebra.layers[slot].degree, algebra.neg(reduction))
    K._cache["flat_model"] = model
    return model


# -- Frobenius-linearized p-power roots -----------------------------------


def frobenius_split(c: RatFunc, q: int, nvars: int) -> dict:
    """Write c as sum of (piece_mu)^q * T^mu over exponents mu below q."""
    num, den = c.num, c.den
    if not den.is_constant or den.constant_value() != 1:
        num = num * den ** (q - 1)
    pieces: dict = {}
    for exp, coeff in num.terms.items():
        mu = tuple(e % q for e in exp)
        quo = tuple(e // q for e in exp)
        bucket = pieces.setdefault(mu, {})
        bucket[quo] = coeff
    dom = num.dom
    out = {}
    for mu, terms in pieces.items():
        piece = MultiPoly(dom, nvars, terms)
        out[mu] = RatFunc(piece, den)
    return out


def p_power_root(algebra: FlatAlgebra, target: dict, r: int):
    """Solve x^(p^r) = target in the algebra; None when no solution exists."""
    q = algebra.field.p**r
    basis = algebra.basis()
    nvars = len(algebra.field.varnames)
    n = len(basis)

    # p^r-th powers of all basis monomials, built multiplicatively
    gen_pows = [algebra.gen_p_power(slot, r) for slot in range(algebra.nslots)]
    powers = {(0,) * algebra.nslots: algebra.one()}
    for e in basis:
        if e in powers:
            continue
        slot = next(i for i, v in enumerate(e) if v)
        prev = list(e)
        prev[slot] -= 1
        powers[e] = algebra.mul(powers[tuple(prev)], gen_pows[slot])

    solver = LinearSolver(algebra.field, n)
    for gamma in basis:
        entries = [powers[alpha].get(gamma, algebra.field.zero) for alpha in basis]
        rhs = target.get(gamma, algebra.field.zero)
        if all(c.is_zero for c in entries) and rhs.is_zero:
            continue
        den = None
        for c in entries + [rhs]:
            if c.is_zero:
                continue
            den = c.den if den is None else poly_lcm(den, c.den)
        scale = RatFunc.from_poly(den) ** q if den is not None else None
        cleared = []
        for c in entries + [rhs]:
            if scale is not None:
                c = c * scale
            if not c.is_polynomial:
                raise InternalInvariantViolation("denominator clearing failed")
            cleared.append(c)
        splits = [frobenius_split(c, q, nvars) for c in cleared]
        mus = sorted({mu for s in splits for mu in s})
        for mu in mus:
            row = [s.get(mu, algebra.field.zero) for s in splits[:-1]]
            rhs_mu = splits[-1].get(mu, algebra.field.zero)
            if not solver.add_equation(row, rhs_mu):
                return None
        if solver.rank == n:
            break

    sol = solver.solution()
    x = algebra.zero()
    for e, c in zip(basis, sol):
        if not c.is_zero:
            x[e] = c
    if not algebra.eq(algebra.pow(x, q), target):
        return None
    return x


def tower_p_root(a: TowerElement):
    """p-th root of a tower element, or None."""
    model = flat_model(a.tower)
    vec = model.flatten(a)
    root = p_power_root(model.algebra, vec, 1)
    if root is None:
        return None
    return model.unflatten(root)

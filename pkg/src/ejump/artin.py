"""Structure of K tensored with purely inseparable extensions of its base field.

The base change K (x)_k k(a1^(1/p^n1), ..., ar^(1/p^nr)) is an Artin local
ring: a truncated polynomial algebra over a residue field obtained from K by
adjoining the missing roots.  Entries are processed sequentially: for each
radicand, the largest extractable p-power root m decides whether the residue
field grows (m < n) and whether a nilpotent of order p^m appears (m >= 1).

The verification oracle rebuilds the concrete finite-dimensional algebra
K[z1..zr]/(zi^(p^ni) - ai) and checks the claimed structure clause by
clause: total dimension, exact nilpotency indices, and the dimension of the
quotient by the claimed nilpotents.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    ArityMismatch,
    CapExceeded,
    InternalInvariantViolation,
    NotAPower,
)
from .ff_arith import RatFunc
from .flat import FlatAlgebra, FlatLayer, LinearSolver, flat_model, p_power_root
from .tower import (
    TRANSCENDENTAL,
    BaseField,
    FieldTower,
    TowerElement,
    adjoin_p_root,
    p_root_tower,
)


@dataclass(frozen=True)
class InseparableExtensionSpec:
    """The extension k' = k(a1^(1/p^n1), ..., ar^(1/p^nr)) given by (radicand, exponent) pairs."""

    entries: tuple

    def __post_init__(self):
        for a, n in self.entries:
            if not isinstance(a, RatFunc) or a.is_zero:
                raise ArityMismatch("radicands must be nonzero base-field elements")
            if n < 1:
                raise ArityMismatch("exponents must be >= 1")

    @classmethod
    def of(cls, pairs) -> "InseparableExtensionSpec":
        return cls(tuple(pairs))

    @classmethod
    def height_one(cls, base: BaseField) -> "InseparableExtensionSpec":
        """The spec materializing k^(1/p): every base variable with exponent 1."""
        field = base.field
        return cls(tuple((field.gen(i), 1) for i in range(base.d)))

    def total_degree(self, p: int) -> int:
        total = 1
        for _, n in self.entries:
            total *= p**n
        return total

    def permuted(self, order) -> "InseparableExtensionSpec":
        return InseparableExtensionSpec(tuple(self.entries[i] for i in order))


@dataclass(frozen=True)
class NilpotentRecord:
    """One nilpotent generator epsilon = root - z^(z_power) of order p^order_exponent."""

    entry_index: int
    order_exponent: int
    root: TowerElement  # p^m-th root of the radicand in the residue field seen at its step
    z_power: int

    def render(self) -> str:
        z = f"z{self.entry_index + 1}"
        zpart = z if self.z_power == 1 else f"{z}^{self.z_power}"
        return f"({self.root.render()}) - {zpart}"


@dataclass(frozen=True)
class TruncatedStructure:
    """Residue field plus truncation orders describing K (x)_k k'."""

    base_tower: FieldTower
    spec: InseparableExtensionSpec
    residue_field: FieldTower
    nilpotents: tuple
    adjoined: tuple  # (entry_index, layer_name) for entries that grew the residue field

    @property
    def edim(self) -> int:
        return len(self.nilpotents)

    @property
    def residue_degree(self) -> int:
        degree = 1
        for _, name in self.adjoined:
            layer = next(l for l in self.residue_field.layers if l.name == name)
            degree *= self.residue_field.layer_degree(layer)
        return degree

    @property
    def total_extension_degree(self) -> int:
        return self.spec.total_degree(self.base_tower.p)

    @property
    def order_exponents(self) -> tuple:
        return tuple(rec.order_exponent for rec in self.nilpotents)

    def check_bookkeeping(self) -> None:
        p = self.base_tower.p
        if self.residue_degree * p ** sum(self.order_exponents) != self.total_extension_degree:
            raise InternalInvariantViolation("dimension bookkeeping of the base change failed")


def _fresh_name(K: FieldTower, stem: str) -> str:
    taken = set(K.base.varnames) | {l.name for l in K.layers}
    i = 1
    while f"{stem}{i}" in taken:
        i += 1
    return f"{stem}{i}"


def base_change_structure(K: FieldTower, spec: InseparableExtensionSpec) -> TruncatedStructure:
    """Process spec entries sequentially, growing the residue field as needed."""
    for a, _ in spec.entries:
        if a.num.arity != K.base.d:
            raise ArityMismatch("radicand does not live in the base field of K")
    L = K
    nilpotents = []
    adjoined = []
    for idx, (a, n) in enumerate(spec.entries):
        current = L.from_base(a)
        roots = [current]
        while len(roots) <= n:
            try:
                roots.append(p_root_tower(roots[-1]))
            except NotAPower:
                break
        m = len(roots) - 1  # min(n, max k with a in L^(p^k))
        if m >= n:
            nilpotents.append(NilpotentRecord(idx, n, roots[n], 1))
        else:
            root_m = roots[m]
            name = _fresh_name(L, "g")
            L = adjoin_p_root(L, root_m, n - m, name=name)
            adjoined.append((idx, name))
            if m >= 1:
                nilpotents.append(NilpotentRecord(idx, m, root_m, K.p ** (n - m)))
    structure = TruncatedStructure(K, spec, L, tuple(nilpotents), tuple(adjoined))
    structure.check_bookkeeping()
    return structure


def edim_of_base_change(K: FieldTower, spec: InseparableExtensionSpec) -> int:
    """Embedding dimension of K (x)_k k': the number of truncation generators."""
    return base_change_structure(K, spec).edim


def ejump_field(K: FieldTower, spec: InseparableExtensionSpec) -> int:
    """Embedding jump of the field K: edim(K (x) k') since edim of a field is 0."""
    return edim_of_base_change(K, spec)


# -- verification oracle ---------------------------------------------------


@dataclass(frozen=True)
class NilpotentCheck:
    entry_index: int
    order_exponent: int
    index_exact: bool
    corrected: bool


@dataclass(frozen=True)
class StructureReport:
    dimension_expected: int
    dimension_ok: bool
    nilpotent_checks: tuple
    quotient_expected: int
    quotient_computed: int
    quotient_ok: bool

    @property
    def passed(self) -> bool:
        return self.dimension_ok and self.quotient_ok and all(c.index_exact for c in self.nilpotent_checks)

    def failures(self) -> list:
        out = []
        if not self.dimension_ok:
            out.append("dimension")
        for c in self.nilpotent_checks:
            if not c.index_exact:
                out.append(f"nilpotency-index[{c.entry_index}]")
        if not self.quotient_ok:
            out.append("residue-quotient")
        return out


class _ConcreteAlgebra:
    """K[z1..zr]/(zi^(p^ni) - ai) over the flat model of K."""

    def __init__(self, K: FieldTower, spec: InseparableExtensionSpec):
        self.K = K
        self.model = flat_model(K)
        base_alg = self.model.algebra
        pad = len(spec.entries)
        layers = [
            FlatLayer(l.name, l.degree, {e + (0,) * pad: c for e, c in l.reduction.items()})
            for l in base_alg.layers
        ]
        self.k_slots = len(layers)
        nslots = self.k_slots + pad
        for i, (a, n) in enumerate(spec.entries):
            scalar = self.model._extend_ratfunc(a)
            reduction = {(0,) * nslots: scalar}
            layers.append(FlatLayer(f"z{i + 1}", K.p**n, reduction))
        self.algebra = FlatAlgebra(base_alg.field, layers)
        self.pad = pad

    def z_gen(self, entry_index: int, power: int = 1) -> dict:
        return self.algebra.gen(self.k_slots + entry_index, power)

    def scalar_base(self, a: RatFunc) -> dict:
        return self.algebra.scalar(self.model._extend_ratfunc(a))

    def eval_residue_element(self, structure: TruncatedStructure, elt: TowerElement) -> dict:
        """Image of a residue-field element with adjoined generators sent to z-monomials."""
        L = structure.residue_field
        elt = L.embed(elt)
        entry_of_layer = {name: idx for idx, name in structure.adjoined}
        return self._eval_payload(L, structure, entry_of_layer, L.height, elt.payload)

    def _eval_payload(self, L, structure, entry_of_layer, level, payload):
        alg = self.algebra
        K = self.K
        if level == 0:
            ext = self.model._extend_ratfunc(payload)
            return alg.scalar(ext)
        layer = L.layers[level - 1]
        if level <= K.height:
            if layer.kind == TRANSCENDENTAL:
                vidx = self.model.transc_map[level]
                num = self._eval_upoly(L, structure, entry_of_layer, level, payload.num, vidx)
                den = self._eval_upoly(L, structure, entry_of_layer, level, payload.den, vidx)
                den_inv = alg.invert(den)
                if den_inv is None:
                    raise InternalInvariantViolation("field denominator not invertible in the oracle algebra")
                return alg.mul(num, den_inv)
            slot = self.model.slot_map[level]
            out = alg.zero()
            for j, coeff in enumerate(payload):
                sub = self._eval_payload(L, structure, entry_of_layer, level - 1, coeff)
                out = alg.add(out, alg.shift(sub, slot, j))
            return out
        # adjoined inseparable layer: generator maps to the entry's z generator
        entry_idx = entry_of_layer[layer.name]
        out = alg.zero()
        for j, coeff in enumerate(payload):
            sub = self._eval_payload(L, structure, entry_of_layer, level - 1, coeff)
            if j:
                sub = alg.mul(sub, self.z_gen(entry_idx, j))
            out = alg.add(out, sub)
        return out

    def _eval_upoly(self, L, structure, entry_of_layer, level, coeffs, vidx):
        alg = self.algebra
        from .ff_arith import MultiPoly

        out = alg.zero()
        for j, coeff in enumerate(coeffs):
            sub = self._eval_payload(L, structure, entry_of_layer, level - 1, coeff)
            if j:
                mono = RatFunc.from_poly(
                    MultiPoly.gen(alg.field.prime_field, len(self.model.t_names), vidx, j)
                )
                sub = alg.scale(sub, mono)
            out = alg.add(out, sub)
        return out


def verify_structure_oracle(
    K: FieldTower,
    spec: InseparableExtensionSpec,
    structure: TruncatedStructure | None = None,
    cap: int = 1024,
) -> StructureReport:
    """Check the claimed truncated structure inside the concrete algebra.

    Clauses: (a) the algebra has the full monomial dimension over K; (b) each
    claimed nilpotent has multiplication operator of nilpotency index exactly
    p^m; (c) the quotient by the claimed nilpotents has the dimension of the
    residue field.
    """
    if structure is None:
        structure = base_change_structure(K, spec)
    p = K.p
    total = spec.total_degree(p)
    if total > cap:
        raise CapExceeded(f"algebra dimension {total} exceeds cap {cap}")
    conc = _ConcreteAlgebra(K, spec)
    alg = conc.algebra
    dim_k = alg.dimension // conc.model.algebra.dimension
    dimension_ok = dim_k == total

    eps_vecs = []
    checks = []
    for rec in structure.nilpotents:
        a, n = spec.entries[rec.entry_index]
        m = rec.order_exponent
        root_vec = conc.eval_residue_element(structure, rec.root)
        target = conc.scalar_base(a)
        corrected = False
        if not alg.eq(alg.pow(root_vec, p**m), target):
            delta = alg.sub(target, alg.pow(root_vec, p**m))
            w = p_power_root(alg, delta, m)
            if w is not None:
                root_vec = alg.add(root_vec, w)
                corrected = True
        eps = alg.sub(root_vec, conc.z_gen(rec.entry_index, rec.z_power))
        # order exponents are >= 1, so p^m - 1 >= 1 and exactness means:
        # eps^(p^m) = 0 while eps^(p^m - 1) != 0
        vanishes = alg.is_zero(alg.pow(eps, p**m))
        sharp = not alg.is_zero(alg.pow(eps, p**m - 1))
        checks.append(NilpotentCheck(rec.entry_index, m, vanishes and sharp, corrected))
        eps_vecs.append(eps)

    basis = alg.basis()
    index = {e: i for i, e in enumerate(basis)}
    solver = LinearSolver(alg.field, len(basis))
    for eps in eps_vecs:
        for b in basis:
            prod = alg.mul(eps, {b: alg.field.one})
            coeffs = [alg.field.zero] * len(basis)
            for e, c in prod.items():
                coeffs[index[e]] = c
            solver.add_equation(coeffs, alg.field.zero)
    d_base = conc.model.algebra.dimension
    quotient_computed_scaled = alg.dimension - solver.rank
    quotient_expected = structure.residue_degree
    return StructureReport(
        dimension_expected=total,
        dimension_ok=dimension_ok,
        nilpotent_checks=tuple(checks),
        quotient_expected=quotient_expected,
        quotient_computed=quotient_computed_scaled // d_base,
        quotient_ok=quotient_computed_scaled == quotient_expected * d_base,
    )

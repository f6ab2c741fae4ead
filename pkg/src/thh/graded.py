"""Graded modules over Z_(p)[v] presented by generators and homogeneous relations.

A presentation stores finitely many generators (each in a single degree) and
relation rows whose terms are (coefficient, v-exponent, generator).  Per-degree
abelian groups come out of Smith normal form on the degree slice, using every
v-power multiple of every relation that lands in the slice, with invariant
factors reduced to their p-parts.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from ._intlin import SubQuot, group_invariants, p_part, row_kernel


@dataclass(frozen=True)
class RingSpec:
    """The coefficient ring Z_(p)[v] with |v| = v_degree > 0."""

    p: int
    v_degree: int

    def __post_init__(self):
        if self.v_degree <= 0:
            raise ValueError("v_degree must be positive (degree-0 bookkeeping lives in filtrations)")


@dataclass(frozen=True)
class Generator:
    gid: str
    degree: int
    label: str = ""

    def display(self) -> str:
        return self.label or self.gid


Term = tuple[int, int, str]  # (coefficient, v-exponent, generator id)


@dataclass(frozen=True)
class Relation:
    """A homogeneous Z_(p)[v]-linear combination of generators set to zero."""

    terms: tuple[Term, ...]


class GradedModulePresentation:
    def __init__(self, ring: RingSpec, generators: list[Generator],
                 relations: list[Relation], complete_below: int | None = None):
        self.ring = ring
        self.generators: dict[str, Generator] = {}
        for g in generators:
            if g.gid in self.generators:
                raise ValueError(f"duplicate generator id {g.gid}")
            self.generators[g.gid] = g
        self.relations: list[Relation] = []
        self._rel_base_degrees: list[int] = []
        for rel in relations:
            self.add_relation(rel)
        self.complete_below = complete_below
        self._slice_cache: dict[int, tuple[list[tuple[str, int]], dict[tuple[str, int], int]]] = {}
        self._subquot_cache: dict[int, SubQuot] = {}
        self._group_cache: dict[int, tuple[int, list[int]]] = {}

    # -- construction ------------------------------------------------------

    def add_relation(self, rel: Relation) -> None:
        if not rel.terms:
            raise ValueError("empty relation")
        degs = set()
        for coeff, v_exp, gid in rel.terms:
            if gid not in self.generators:
                raise ValueError(f"relation references unknown generator {gid}")
            if v_exp < 0:
                raise ValueError("negative v-exponent in relation")
            degs.add(self.generators[gid].degree + v_exp * self.ring.v_degree)
        if len(degs) != 1:
            raise ValueError(f"inhomogeneous relation: degrees {sorted(degs)} in {rel.terms}")
        self.relations.append(rel)
        self._rel_base_degrees.append(degs.pop())

    def term_degree(self, terms) -> int:
        degs = {self.generators[g].degree + e * self.ring.v_degree for _, e, g in terms}
        assert len(degs) == 1, f"inhomogeneous element: {terms}"
        return degs.pop()

    # -- degree slices -----------------------------------------------------

    def slice_cells(self, d: int) -> list[tuple[str, int]]:
        """Cells (generator, v-exponent) spanning the degree-d slice of the free cover."""
        return self._slice(d)[0]

    def _slice(self, d: int):
        if d not in self._slice_cache:
            vd = self.ring.v_degree
            cells = []
            for g in self.generators.values():
                rem = d - g.degree
                if rem >= 0 and rem % vd == 0:
                    cells.append((g.gid, rem // vd))
            index = {c: i for i, c in enumerate(cells)}
            self._slice_cache[d] = (cells, index)
        return self._slice_cache[d]

    def slice_relation_rows(self, d: int) -> list[list[int]]:
        """Every v-power multiple of every relation that lands in degree d."""
        cells, index = self._slice(d)
        vd = self.ring.v_degree
        rows = []
        for rel, base in zip(self.relations, self._rel_base_degrees):
            rem = d - base
            if rem < 0 or rem % vd:
                continue
            shift = rem // vd
            row = [0] * len(cells)
            for coeff, v_exp, gid in rel.terms:
                row[index[(gid, v_exp + shift)]] += coeff
            if any(row):
                rows.append(row)
        return rows

    def element_vector(self, d: int, terms) -> list[int]:
        """Coordinate vector in the degree-d slice of a homogeneous element."""
        cells, index = self._slice(d)
        row = [0] * len(cells)
        for coeff, v_exp, gid in terms:
            key = (gid, v_exp)
            if key not in index:
                raise ValueError(f"term {coeff}*v^{v_exp}*{gid} is not in degree {d}")
            row[index[key]] += coeff
        return row

    # -- groups ------------------------------------------------------------

    def group_at(self, d: int) -> tuple[int, list[int]]:
        """(free rank, sorted p-local torsion orders) of the degree-d group."""
        if d not in self._group_cache:
            cells = self.slice_cells(d)
            rows = self.slice_relation_rows(d)
            self._group_cache[d] = group_invariants(rows, len(cells), self.ring.p)
        return self._group_cache[d]

    def subquot_at(self, d: int) -> SubQuot:
        """Summand-level structure of the degree-d group, with generator vectors."""
        if d not in self._subquot_cache:
            cells = self.slice_cells(d)
            n = len(cells)
            gens = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
            self._subquot_cache[d] = SubQuot(self.ring.p, n, gens, self.slice_relation_rows(d))
        return self._subquot_cache[d]

    def is_zero_at(self, d: int, terms) -> bool:
        return self.subquot_at(d).is_zero(self.element_vector(d, terms))

    def order_of(self, d: int, terms) -> int:
        """p-local order of a homogeneous element (0 for infinite order)."""
        sq = self.subquot_at(d)
        vec = self.element_vector(d, terms)
        if sq.is_zero(vec):
            return 1
        order = 1
        p = self.ring.p
        while order <= p ** 60:
            order *= p
            if sq.is_zero([order * x for x in vec]):
                return order
        return 0

    def summand_labels(self, d: int) -> list[str]:
        """A printable label for each cyclic summand of the degree-d group."""
        sq = self.subquot_at(d)
        cells = self.slice_cells(d)
        out = []
        for idx in range(len(sq.summands)):
            vec = sq.generator_vector(idx)
            pick = None
            for i, c in enumerate(vec):
                if c and c % self.ring.p != 0:
                    pick = (1, i, c)
                    break
            if pick is None:
                for i, c in enumerate(vec):
                    if c:
                        pick = (p_part(c, self.ring.p), i, c)
                        break
            mult, i, _ = pick
            gid, e = cells[i]
            name = self.generators[gid].display()
            label = name if e == 0 else f"v^{e} {name}"
            out.append(label if mult == 1 else f"{mult} {label}")
        return out

    # -- operations --------------------------------------------------------

    def action_matrix(self, d: int, op: str) -> list[list[int]]:
        """Matrix of multiplication by p (degree d -> d) or v (d -> d + |v|) on slice cells."""
        cells, _ = self._slice(d)
        if op == "p":
            n = len(cells)
            return [[self.ring.p if i == j else 0 for j in range(n)] for i in range(n)]
        if op == "v":
            tgt_cells, tgt_index = self._slice(d + self.ring.v_degree)
            rows = []
            for gid, e in cells:
                row = [0] * len(tgt_cells)
                row[tgt_index[(gid, e + 1)]] = 1
                rows.append(row)
            return rows
        raise ValueError(f"unknown action {op!r}")

    def suspend(self, shift: int) -> "GradedModulePresentation":
        gens = [Generator(g.gid, g.degree + shift, g.label) for g in self.generators.values()]
        out = GradedModulePresentation(self.ring, gens, [], None)
        for rel in self.relations:
            out.add_relation(rel)
        out.complete_below = None if self.complete_below is None else self.complete_below + shift
        return out

    @staticmethod
    def direct_sum(parts: list["GradedModulePresentation"]) -> "GradedModulePresentation":
        assert parts, "direct_sum of nothing"
        ring = parts[0].ring
        gens: list[Generator] = []
        out = None
        for part in parts:
            assert part.ring == ring
            gens.extend(part.generators.values())
        out = GradedModulePresentation(ring, gens, [], None)
        for part in parts:
            for rel in part.relations:
                out.add_relation(rel)
        bounds = [part.complete_below for part in parts]
        out.complete_below = None if any(b is None for b in bounds) else min(bounds)
        return out

    def dual(self, lo: int, hi: int, prefix: str = "D") -> "GradedModulePresentation":
        """Per-degree character dual on [lo, hi]: negated degrees, transposed v-action.

        Every degree in the window must be finite.
        """
        p = self.ring.p
        vd = self.ring.v_degree
        summands: dict[int, list[int]] = {}
        for d in range(lo, hi + 1):
            sq = self.subquot_at(d)
            if sq.free_rank():
                raise ValueError(f"dual needs finite groups; degree {d} has free rank")
            summands[d] = [o for o, _ in sq.summands]
        gens = []
        for d in range(lo, hi + 1):
            for k, order in enumerate(summands[d]):
                gens.append(Generator(f"{prefix}[{d},{k}]", -d, f"{prefix}({d},{k})"))
        out = GradedModulePresentation(self.ring, gens, [], None)
        for d in range(lo, hi + 1):
            for k, order in enumerate(summands[d]):
                exp = 0
                o = order
                while o > 1:
                    o //= p
                    exp += 1
                out.add_relation(Relation(((p**exp, 0, f"{prefix}[{d},{k}]"),)))
        # dual generators whose v-image would come from below the window: kill v
        for d in range(lo, min(lo + vd, hi + 1)):
            for k in range(len(summands[d])):
                out.add_relation(Relation(((1, 1, f"{prefix}[{d},{k}]"),)))
        # transposed v-action: v on the dual of degree d+|v| lands in the dual of degree d
        for d in range(lo, hi + 1 - vd):
            src_sq = self.subquot_at(d)
            tgt_sq = self.subquot_at(d + vd)
            tgt_orders = summands[d + vd]
            src_orders = summands[d]
            if not tgt_orders:
                continue
            # matrix of v in summand coordinates
            mat = []
            for j in range(len(src_orders)):
                vec = src_sq.generator_vector(j)
                cells = self.slice_cells(d)
                shifted = self.element_vector(
                    d + vd, [(c, e + 1, gid) for (gid, e), c in zip(cells, vec) if c]
                )
                mat.append(tgt_sq.express(shifted))
        # (m[j][k]) with p^{a_j} source orders, p^{b_k} target orders
            for k, bk in enumerate(tgt_orders):
                terms: list[Term] = [(1, 1, f"{prefix}[{d + vd},{k}]")]
                for j, aj in enumerate(src_orders):
                    m = mat[j][k] % bk
                    if aj >= bk:
                        c = m * (aj // bk)
                    else:
                        assert m % (bk // aj) == 0, "v-action fails to dualize"
                        c = m // (bk // aj)
                    c %= aj
                    if c:
                        terms.append((-c, 0, f"{prefix}[{d},{j}]"))
                out.add_relation(Relation(tuple(terms)))
        out.complete_below = None
        return out

    def isomorphic_on(self, other: "GradedModulePresentation", degrees) -> bool:
        return all(self.group_at(d) == other.group_at(d) for d in degrees)


class ModuleMap:
    """A degree-shifting map of presentations given on generators."""

    def __init__(self, source: GradedModulePresentation, target: GradedModulePresentation,
                 images: dict[str, tuple[Term, ...]], degree_shift: int = 0):
        self.source = source
        self.target = target
        self.images = images
        self.degree_shift = degree_shift
        for gid, terms in images.items():
            if terms:
                want = source.generators[gid].degree + degree_shift
                got = target.term_degree(terms)
                if want != got:
                    raise ValueError(f"image of {gid} has degree {got}, expected {want}")

    def image_of_cell(self, gid: str, e: int) -> list[Term]:
        return [(c, e + ve, t) for c, ve, t in self.images.get(gid, ())]

    def matrix(self, d: int) -> list[list[int]]:
        """Matrix from the degree-d slice cells to the degree-(d+shift) target slice."""
        out = []
        td = d + self.degree_shift
        for gid, e in self.source.slice_cells(d):
            out.append(self.target.element_vector(td, self.image_of_cell(gid, e)))
        return out

    def respects_relations(self, degrees=None) -> bool:
        """Check the images of all source relations vanish in the target."""
        for rel, base in zip(self.source.relations, self.source._rel_base_degrees):
            if degrees is not None and base not in degrees:
                continue
            img: list[Term] = []
            for coeff, v_exp, gid in rel.terms:
                img.extend((coeff * c, v_exp + ve, t) for c, ve, t in self.images.get(gid, ()))
            if not img:
                continue
            td = base + self.degree_shift
            if not self.target.is_zero_at(td, img):
                return False
        return True

    def image_subquot(self, d: int) -> SubQuot:
        td = d + self.degree_shift
        src_sq = self.source.subquot_at(d)
        mat = self.matrix(d)
        gen_rows = []
        for idx in range(len(src_sq.summands)):
            vec = src_sq.generator_vector(idx)
            row = [0] * len(self.target.slice_cells(td))
            for i, c in enumerate(vec):
                if c:
                    for t, m in enumerate(mat[i]):
                        row[t] += c * m
            gen_rows.append(row)
        return SubQuot(self.target.ring.p, len(self.target.slice_cells(td)),
                       gen_rows, self.target.slice_relation_rows(td))

    def injective_at(self, d: int) -> bool:
        src_sq = self.source.subquot_at(d)
        img = self.image_subquot(d)
        return (img.free_rank() == src_sq.free_rank()
                and img.total_order_exponent() == src_sq.total_order_exponent())

    def surjective_at(self, d: int) -> bool:
        tgt_sq = self.target.subquot_at(d + self.degree_shift)
        img = self.image_subquot(d)
        return (img.free_rank() == tgt_sq.free_rank()
                and img.torsion() == tgt_sq.torsion())


def submodule_presentation(module: GradedModulePresentation,
                           elements: list[tuple[str, tuple[Term, ...], str]],
                           hi: int) -> GradedModulePresentation:
    """Presentation (valid below hi) of the submodule generated by homogeneous elements.

    elements: (new generator id, defining terms in `module`, label).
    """
    ring = module.ring
    gens = []
    defs: dict[str, tuple[Term, ...]] = {}
    for gid, terms, label in elements:
        deg = module.term_degree(terms)
        gens.append(Generator(gid, deg, label))
        defs[gid] = terms
    sub = GradedModulePresentation(ring, gens, [], hi)
    inclusion = ModuleMap(sub, module, defs)
    lo = min(g.degree for g in gens)
    for d in range(lo, hi, 1):
        cells = sub.slice_cells(d)
        if not cells:
            continue
        mat = inclusion.matrix(d)
        tgt_rows = module.slice_relation_rows(d)
        n_tgt = len(module.slice_cells(d))
        stacked = mat + tgt_rows
        kernel = row_kernel(stacked, n_tgt)
        have = sub.slice_relation_rows(d)
        n_src = len(cells)
        have_sq = SubQuot(ring.p, n_src, have, []) if have else None
        for kv in kernel:
            row = kv[: len(cells)]
            if not any(row):
                continue
            if have_sq is not None and have_sq.express(row) is not None:
                continue
            terms = tuple(
                (c, e, gid) for (gid, e), c in zip(cells, row) if c
            )
            sub.add_relation(Relation(terms))
            have = sub.slice_relation_rows(d)
            have_sq = SubQuot(ring.p, n_src, have, [])
    return sub

"""Multiplicative Bockstein spectral sequence engine.

Pages are stored as integer lattices per bidegree slot: Z (cycles) and B
(boundaries) inside the ambient slot group.  Differentials are supplied as
explicit rules d_r(source vector) = target vector; a page turn applies all
same-page rules simultaneously, checks them for consistency, and updates the
lattices.  After the last page the E_infinity slots are assembled into a
graded abelian group presentation, resolving filtration jumps through
declared extension instances.

Conventions: a rule on slot (d, s) has its target in slot (d - 1, s + r),
i.e. the Bockstein variable carries internal degree |v| with the slot's
internal degree d already including s * |v| (so d is the total degree of the
abutment class).
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from ._intlin import (
    SubQuot,
    lattice_coordinates,
    row_hermite,
    row_kernel,
    solve_in_lattice,
)
from .graded import GradedModulePresentation, Generator, Relation, RingSpec
from .padic import PrimeContext, a_degree, b_degree, lambda_degree, mu_degree, nu
from . import closed_forms as cf


class EngineError(Exception):
    """A declared differential contradicts the current page."""


class _Ceiling(Exception):
    """An extension chain left the assembled filtration range."""


@dataclass(frozen=True)
class Cell:
    label: str
    order: int  # ambient order (a p-power), 0 for a free cell


@dataclass(frozen=True)
class Rule:
    page: int
    slot: tuple[int, int]
    source: tuple[int, ...]
    target: tuple[int, ...]
    name: str


@dataclass(frozen=True)
class Extension:
    """p * (lift of the class of `source`) = next layer + sum of targets.

    Each target is (coefficient, slot, cell vector); the implicit "next
    layer" term is the class of p * source in the same slot, which the
    assembler picks up on its own.
    """

    slot: tuple[int, int]
    source: tuple[int, ...]
    targets: tuple[tuple[int, tuple[int, int], tuple[int, ...]], ...]


def _nu_frac(x: Fraction | int, p: int) -> int:
    x = Fraction(x)
    if x == 0:
        return 10**9
    v = 0
    n = x.numerator
    while n % p == 0:
        n //= p
        v += 1
    d = x.denominator
    while d % p == 0:
        d //= p
        v -= 1
    return v


def _scale_primitive(row: list[Fraction], p: int) -> list[int]:
    """Clear denominators and common p-free content, keeping p-parts."""
    den = 1
    for x in row:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in row]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g:
        while g % p == 0:
            g //= p
        ints = [x // g for x in ints]
    return ints


class _Lattice:
    """p-local membership oracle for the row span of an integer matrix."""

    def __init__(self, rows: list[list[int]], dim: int, p: int):
        self.p = p
        self.dim = dim
        self.basis, self.pivots = row_hermite(rows, dim)

    def contains(self, vec: list[int]) -> bool:
        if not any(vec):
            return True
        return solve_in_lattice(self.basis, self.pivots, vec, self.p) is not None


class SpectralSequence:
    def __init__(self, p: int, cells: dict[tuple[int, int], list[Cell]]):
        self.p = p
        self.cells = cells
        self.Z = {slot: [self._unit(len(cs), i) for i in range(len(cs))]
                  for slot, cs in cells.items()}
        self.B = {slot: [] for slot in cells}
        self._sq_cache: dict[tuple[int, int], SubQuot] = {}

    @staticmethod
    def _unit(n: int, i: int) -> list[int]:
        row = [0] * n
        row[i] = 1
        return row

    def ambient_rows(self, slot) -> list[list[int]]:
        rows = []
        for i, c in enumerate(self.cells[slot]):
            if c.order:
                rows.append([c.order if j == i else 0
                             for j in range(len(self.cells[slot]))])
        return rows

    def zero_rows(self, slot) -> list[list[int]]:
        return self.B[slot] + self.ambient_rows(slot)

    def subquot(self, slot) -> SubQuot:
        if slot not in self._sq_cache:
            self._sq_cache[slot] = SubQuot(self.p, len(self.cells[slot]),
                                           self.Z[slot], self.zero_rows(slot))
        return self._sq_cache[slot]

    def fp_dim(self, slot) -> int:
        sq = self.subquot(slot)
        return sq.free_rank() + len(sq.torsion())

    # -- page turns ---------------------------------------------------------

    def run(self, rules: list[Rule], last_page: int, audit: bool = True) -> None:
        by_page: dict[int, list[Rule]] = {}
        for rule in rules:
            by_page.setdefault(rule.page, []).append(rule)
        for r in sorted(by_page):
            if r > last_page:
                break
            self._turn(r, by_page[r], audit)

    def _turn(self, r: int, rules: list[Rule], audit: bool) -> None:
        by_slot: dict[tuple[int, int], list[Rule]] = {}
        for rule in rules:
            if rule.slot not in self.cells:
                continue
            by_slot.setdefault(rule.slot, []).append(rule)
        updates = []
        for slot, slot_rules in sorted(by_slot.items()):
            upd = self._slot_differential(r, slot, slot_rules)
            if upd is not None:
                updates.append(upd)
        if audit:
            pre = {}
            for src, _, tgt, _ in updates:
                for slot in (src, tgt):
                    sq = self.subquot(slot)
                    pre[slot] = (sq.free_rank(), sq.total_order_exponent())
        for src, new_z, tgt, images in updates:
            self.Z[src] = new_z
            self.B[tgt] = self.B[tgt] + [list(y) for y in images]
        self._sq_cache.clear()
        if audit:
            sources = {u[0] for u in updates}
            targets = {u[2] for u in updates}
            for src, _, tgt, _ in updates:
                if src in targets or tgt in sources:
                    continue  # mixed roles: drops are not separable
                s_old, t_old = pre[src], pre[tgt]
                s_new = self.subquot(src)
                t_new = self.subquot(tgt)
                if s_new.free_rank() > s_old[0] or t_new.free_rank() > t_old[0]:
                    raise EngineError(f"page {r}: slice rank grew at {src}->{tgt}")
                if s_old[0] == 0 and t_old[0] == 0:
                    s_drop = s_old[1] - s_new.total_order_exponent()
                    t_drop = t_old[1] - t_new.total_order_exponent()
                    if s_drop != t_drop:
                        raise EngineError(
                            f"page {r}: rank-nullity fails at {src}->{tgt}: "
                            f"source drop {s_drop}, target drop {t_drop}")

    def _cycle_part(self, vec, z_rows, l_rows, dim):
        """Rewrite vec as an integer cycle plus zero-lattice junk.

        Returns (cycle vector, denominator) with [vec] = [cycle]/den, den a
        p-unit, or (None, 1) when the class is not represented by a cycle.
        """
        coords = lattice_coordinates(z_rows + l_rows, dim, vec, self.p)
        if coords is None:
            return None, 1
        den = 1
        for c in coords[:len(z_rows)]:
            den = den * c.denominator // gcd(den, c.denominator)
        out = [0] * dim
        for c, row in zip(coords[:len(z_rows)], z_rows):
            ci = int(c * den)
            if ci:
                for j in range(dim):
                    out[j] += ci * row[j]
        return out, den

    def _slot_differential(self, r: int, slot, slot_rules):
        p = self.p
        d, s = slot
        tgt_slot = (d - 1, s + r)
        if tgt_slot not in self.cells:
            return None
        dim_s = len(self.cells[slot])
        dim_t = len(self.cells[tgt_slot])
        z_lat = _Lattice(self.Z[slot], dim_s, p)
        zt_lat = _Lattice(self.Z[tgt_slot], dim_t, p)
        ls_rows = self.zero_rows(slot)
        lt_rows = self.zero_rows(tgt_slot)
        ls_lat = _Lattice(ls_rows, dim_s, p)
        lt_lat = _Lattice(lt_rows, dim_t, p)
        X, Y = [], []
        for rule in slot_rules:
            src, tgt = list(rule.source), list(rule.target)
            if not any(src) or ls_lat.contains(src):
                continue  # vacuous: the source class is already zero
            src, den = self._cycle_part(src, self.Z[slot], ls_rows, dim_s)
            if src is None:
                raise EngineError(f"{rule.name}: source is not a cycle")
            tgt = [den * v for v in tgt]
            if any(tgt):
                if not zt_lat.contains(tgt) and not _Lattice(
                        self.Z[tgt_slot] + lt_rows, dim_t, p).contains(tgt):
                    raise EngineError(f"{rule.name}: target is not a cycle")
                if lt_lat.contains(tgt):
                    raise EngineError(f"{rule.name}: target class is already zero")
            # an all-zero target is an explicit d(x) = 0 statement; it still
            # pins the differential on the source's span
            X.append(src)
            Y.append(tgt)
        if not X:
            return None
        # rows of the zero lattice that happen to be cycles represent the
        # zero class, so the linear differential must send them into the
        # target's zero lattice; they join the elimination as constraints
        # with zero image and can force values on directions no rule names
        for row in ls_rows:
            if any(row) and z_lat.contains(row):
                X.append(list(row))
                Y.append([0] * dim_t)
        # combinations of sources that vanish as classes must have vanishing
        # image classes, otherwise the rules are not a homomorphism
        for row in row_kernel(X + ls_rows, dim_s):
            lam = row[:len(X)]
            if not any(lam):
                continue
            img = [sum(lam[t] * Y[t][j] for t in range(len(X)))
                   for j in range(dim_t)]
            if not lt_lat.contains(img):
                raise EngineError(
                    f"page {r} at {slot}: inconsistent differentials")
        # build the linear differential by elimination; rows with the least
        # p-divisible sources are pivoted first so that p-divisible sources
        # defer to the rules on their finer companions (dependencies between
        # rules were already validated by the kernel check above)
        pivots: list[tuple[int, list[Fraction], list[Fraction]]] = []
        pending = [([Fraction(v) for v in x], [Fraction(v) for v in y])
                   for x, y in zip(X, Y)]
        while pending:
            reduced = []
            for left, right in pending:
                for col, prow_l, prow_r in pivots:
                    c = left[col]
                    if c:
                        left = [a - c * b for a, b in zip(left, prow_l)]
                        right = [a - c * b for a, b in zip(right, prow_r)]
                reduced.append((left, right))
            reduced = [(l, rt) for l, rt in reduced if any(l)]
            if not reduced:
                break
            best = min(reduced,
                       key=lambda lr: min(_nu_frac(v, p) for v in lr[0] if v))
            left, right = best
            col = min((j for j in range(dim_s) if left[j]),
                      key=lambda j: _nu_frac(left[j], p))
            c = left[col]
            left = [a / c for a in left]
            right = [a / c for a in right]
            pivots.append((col, left, right))
            pending = [lr for lr in reduced if lr is not best]
        images = []
        for z in self.Z[slot]:
            left = [Fraction(v) for v in z]
            img = [Fraction(0)] * dim_t
            for col, prow_l, prow_r in pivots:
                c = left[col]
                if c:
                    left = [a - c * b for a, b in zip(left, prow_l)]
                    img = [a + c * b for a, b in zip(img, prow_r)]
            for v in img:
                if v.denominator % p == 0:
                    raise EngineError(
                        f"page {r} at {slot}: differential requires division by {p}")
            images.append(img)
        # new cycles: z with image zero modulo the target's zero lattice
        den = 1
        for img in images:
            for v in img:
                den = den * v.denominator // gcd(den, v.denominator)
        w_rows = [[int(v * den) for v in img] for img in images]
        scaled_lt = [[den * v for v in row] for row in lt_rows]
        new_z = []
        for row in row_kernel(w_rows + scaled_lt, dim_t):
            mu = row[:len(images)]
            if any(mu):
                vec = [sum(mu[i] * self.Z[slot][i][j] for i in range(len(mu)))
                       for j in range(dim_s)]
                new_z.append(vec)
        return slot, new_z, tgt_slot, Y

    # -- assembly -----------------------------------------------------------

    def assemble(self, extensions: list[Extension], lo: int, hi: int,
                 smax: int, name: str = "E") -> GradedModulePresentation:
        p = self.p
        exts: dict[tuple[int, int], list[Extension]] = {}
        for ext in extensions:
            exts.setdefault(ext.slot, []).append(ext)
        meta: dict[tuple[int, int], list[tuple[str, int, list[int]]]] = {}
        gens = []
        for slot in sorted(self.cells):
            d, s = slot
            if not (lo <= d <= hi and s <= smax):
                continue
            sq = self.subquot(slot)
            entries = []
            for i, order in enumerate(sq.orders):
                gid = f"{name}[{d},{s}]#{i}"
                gvec = sq.generator_vector(i)
                label = self._summand_label(slot, gvec, s)
                gens.append(Generator(gid, d, label))
                entries.append((gid, order, gvec))
            if entries:
                meta[slot] = entries

        def to_y(slot, vec):
            if slot not in meta:
                if slot in self.cells and not any(
                        self.subquot(slot).orders):
                    return {}
                raise _Ceiling()
            coords = self.subquot(slot).express(vec)
            if coords is None:
                raise EngineError(f"assembly: class at {slot} escapes the cycles")
            out = {}
            for (gid, _, _), c in zip(meta[slot], coords):
                if c:
                    out[gid] = Fraction(c)
            return out

        def lift(slot, vec, k):
            if not any(vec):
                return {}
            if k == 0:
                return to_y(slot, vec)
            out = lift(slot, [p * v for v in vec], k - 1)
            for ext in exts.get(slot, []):
                u = self._class_unit_ratio(slot, vec, list(ext.source))
                if u is None:
                    continue
                for coeff, slot2, vec2 in ext.targets:
                    sub = lift(slot2, [coeff * v for v in vec2], k - 1)
                    for gid, val in sub.items():
                        out[gid] = out.get(gid, Fraction(0)) + u * val
            return out

        mod = GradedModulePresentation(RingSpec(p, 2), gens, [],
                                       complete_below=hi + 1)
        for gen in gens:
            mod.add_relation(Relation(((1, 1, gen.gid),)))
        for slot, entries in meta.items():
            for gid, order, gvec in entries:
                if order == 0:
                    continue
                m = 0
                o = order
                while o > 1:
                    o //= p
                    m += 1
                try:
                    rhs = lift(slot, gvec, m)
                except _Ceiling:
                    continue  # the tower leaves the window: no relation
                terms = {gid: Fraction(order)}
                for g2, val in rhs.items():
                    terms[g2] = terms.get(g2, Fraction(0)) - val
                den = 1
                for val in terms.values():
                    den = den * val.denominator // gcd(den, val.denominator)
                if den % p == 0:
                    raise EngineError(f"assembly: non-local relation at {slot}")
                rel = tuple((int(val * den), 0, g2)
                            for g2, val in terms.items() if val)
                if rel:
                    mod.add_relation(Relation(rel))
        return mod

    def _summand_label(self, slot, gvec, s) -> str:
        cells = self.cells[slot]
        best = min((j for j in range(len(cells)) if gvec[j]),
                   key=lambda j: _nu_frac(gvec[j], self.p),
                   default=0)
        coeff = gvec[best]
        pre = "" if abs(coeff) == 1 else f"{abs(coeff)}*"
        return f"{pre}{cells[best].label}@{s}"

    def _class_unit_ratio(self, slot, veca, vecb):
        """A p-adic unit u with [veca] = u * [vecb], or None."""
        p = self.p
        sq = self.subquot(slot)
        a = sq.express(veca)
        b = sq.express(vecb)
        if a is None or b is None:
            return None
        orders = sq.orders
        cand = None
        # an infinite-order coordinate pins the ratio exactly
        for ai, bi, o in zip(a, b, orders):
            if o == 0 and bi:
                u = Fraction(ai) / Fraction(bi)
                if cand is not None and u != cand:
                    return None
                cand = u
            elif o == 0 and ai:
                return None
        if cand is None:
            best = None
            for i, (bi, o) in enumerate(zip(b, orders)):
                if o == 0 or bi % o == 0:
                    continue
                v = _nu_frac(bi, p)
                key = o // p**v
                if best is None or key > best[0]:
                    best = (key, i, v)
            if best is None:
                return None
            _, i, v = best
            o = orders[i]
            if _nu_frac(a[i], p) != v:
                return None
            red = o // p**v
            inv = pow((b[i] // p**v) % red, -1, red) if red > 1 else 0
            cand = Fraction(((a[i] // p**v) * inv) % red if red > 1 else 1)
        if cand == 0 or _nu_frac(cand, p) != 0:
            return None
        diff = [Fraction(x) - cand * y for x, y in zip(veca, vecb)]
        den = 1
        for v in diff:
            den = den * v.denominator // gcd(den, v.denominator)
        if den % p == 0:
            return None
        scaled = [int(v * den) for v in diff]
        if not sq.is_zero(scaled):
            return None
        return cand


# -- shared helpers --------------------------------------------------------------


def _step_count(e: int) -> int:
    """Number of k >= 1 with 2^(k+1) - 3 <= e (ko-side staircase height)."""
    out = 0
    k = 1
    while 2 ** (k + 1) - 3 <= e:
        out += 1
        k += 1
    return out


def _int_coords(coords, p: int) -> list[int]:
    den = 1
    for c in coords:
        c = Fraction(c)
        den = den * c.denominator // gcd(den, c.denominator)
    if den % p == 0:
        raise EngineError("class has non-local coordinates")
    return [int(Fraction(c) * den) for c in coords]


@dataclass
class EngineSetup:
    ss: SpectralSequence
    rules: list[Rule]
    extensions: list[Extension]
    last_page: int
    window: int
    chain_smax: int

    def run(self, audit: bool = True) -> GradedModulePresentation:
        self.ss.run(self.rules, self.last_page, audit=audit)
        return self.ss.assemble(self.extensions, 0, self.window, self.chain_smax)

    def sign_flipped(self) -> "EngineSetup":
        flipped = [Rule(r.page, r.slot, r.source,
                        tuple(-t for t in r.target), r.name)
                   for r in self.rules]
        return EngineSetup(SpectralSequence(self.ss.p, self.ss.cells),
                           flipped, self.extensions, self.last_page,
                           self.window, self.chain_smax)


# -- integral-coefficient sequence over the mod-p page ---------------------------


def _monomial_label(p: int, e1: int, e2: int, i: int) -> str:
    parts = []
    if e1:
        parts.append("l1")
    if e2:
        parts.append("l2")
    if i:
        parts.append(f"mu^{i}" if i > 1 else "mu")
    return "*".join(parts) or "1"


def v0_tower_setup(ctx: PrimeContext, window: int, chain_smax: int = 10) -> EngineSetup:
    """First-variable Bockstein: exterior-times-polynomial page, p-filtration."""
    p = ctx.p
    by_deg: dict[int, list[tuple[int, int, int]]] = {}
    for d, e1, e2, i in cf.hfp_monomials(p, window + 1):
        by_deg.setdefault(d, []).append((e1, e2, i))
    last_page = 1
    i = 1
    while mu_degree(p) * i <= window + 1:
        last_page = max(last_page, nu(p, i) + 1)
        i += 1
    smax = chain_smax + last_page
    cells = {}
    for d, mons in by_deg.items():
        row = [Cell(_monomial_label(p, *m), p) for m in mons]
        for s in range(smax + 1):
            cells[(d, s)] = row
    rules = []
    for d, mons in by_deg.items():
        for j, (e1, e2, i) in enumerate(mons):
            if e2 or i == 0:
                continue
            tgt_mons = by_deg.get(d - 1, [])
            if (e1, 1, i - 1) not in tgt_mons:
                continue
            page = nu(p, i) + 1
            src = tuple(1 if t == j else 0 for t in range(len(mons)))
            tgt = tuple(1 if m == (e1, 1, i - 1) else 0 for m in tgt_mons)
            for s in range(smax - page + 1):
                rules.append(Rule(page, (d, s), src, tgt,
                                  f"d{page}({_monomial_label(p, e1, e2, i)})"))
    exts = []
    for d, mons in by_deg.items():
        for j in range(len(mons)):
            vec = tuple(1 if t == j else 0 for t in range(len(mons)))
            for s in range(smax):
                exts.append(Extension((d, s), vec, ((1, (d, s + 1), vec),)))
    return EngineSetup(SpectralSequence(p, cells), rules, exts,
                       last_page, window, chain_smax)


# -- second-variable sequence over the integral page -----------------------------


def v1_tower_setup(ctx: PrimeContext, window: int) -> EngineSetup:
    p = ctx.p
    vd = 2 * p - 2
    fams: list[tuple[str, int, int]] = [("l1", 2 * p - 1, 0)]
    i = 1
    while a_degree(p, i) <= window + 1:
        order = p ** (nu(p, i) + 1)
        fams.append((f"a{i}", a_degree(p, i), order))
        if b_degree(p, i) <= window + 1:
            fams.append((f"b{i}", b_degree(p, i), order))
        i += 1
    imax = i - 1
    nmax = 1
    while p**nmax <= max(imax, 1):
        nmax += 1
    last_page = sum(p**j for j in range(1, nmax + 1))
    chain_smax = window // vd + 2
    smax = chain_smax + last_page
    cells = {}
    slot_of = {}
    for gid, deg, order in fams:
        for s in range(smax + 1):
            d = deg + s * vd
            if d <= window + 1:
                cells[(d, s)] = [Cell(gid, order)]
                slot_of[(gid, s)] = (d, s)
    rules = []
    n = 1
    while p ** (n - 1) <= imax:
        page = sum(p**j for j in range(1, n + 1))
        k = 2
        while k * p ** (n - 1) <= imax:
            i = k * p ** (n - 1)
            m = (k - 1) * p ** (n - 1)
            for s in range(smax - page + 1):
                src_slot = slot_of.get((f"a{i}", s))
                tgt_slot = slot_of.get((f"b{m}", s + page))
                if src_slot is None or tgt_slot is None:
                    continue
                rules.append(Rule(page, src_slot, (p ** (n - 1),),
                                  (p ** nu(p, k - 1),), f"d{page}(a{i})"))
            k += 1
        n += 1
    exts = []
    for s in range(smax + 1):
        src = slot_of.get(("a1", s))
        tgt = slot_of.get(("l1", s + p))
        if src and tgt:
            exts.append(Extension(src, (1,), ((1, tgt, (1,)),)))
    k = 1
    while p**k <= imax:
        for s in range(smax + 1):
            src = slot_of.get((f"a{p**k}", s))
            tgt = slot_of.get((f"a{p**(k - 1)}", s + p ** (k + 1)))
            if src and tgt:
                exts.append(Extension(src, (p**k,),
                                      ((p ** (k - 1), tgt, (1,)),)))
        k += 1
    for gid, deg, order in fams:
        if not gid.startswith("b"):
            continue
        m = int(gid[1:])
        kv = nu(p, m)
        m2 = m - (p - 1) * p**kv
        if m2 < 1:
            continue
        k2 = nu(p, m2)
        for j in range(kv + 1):
            c = k2 - kv - 1 + j
            if c < 0:
                continue
            for s in range(smax + 1):
                src = slot_of.get((gid, s))
                tgt = slot_of.get((f"b{m2}", s + p ** (kv + 2)))
                if src and tgt:
                    exts.append(Extension(src, (p**j,), ((p**c, tgt, (1,)),)))
    return EngineSetup(SpectralSequence(p, cells), rules, exts,
                       last_page, window, chain_smax)


# -- eta-filtration sequence for the ko answer -----------------------------------


def _bprime_gid(m: int) -> str:
    n = m.bit_length() - 1
    digits = format(m - 2**n, f"0{n}b") if n else ""
    digits = digits.rstrip("0")
    return f"T'[{n}]:h_{digits or 'e'}"


class _KuClasses:
    """Cell coordinates of named classes in the ku-coefficient answer."""

    def __init__(self, window: int):
        self.mod = cf.thh_ko_ku(window, reduced=True)
        self.window = window
        self._free_idx: dict[int, int] = {}

    def summands(self, d: int) -> list[Cell]:
        sq = self.mod.subquot_at(d)
        labels = self.mod.summand_labels(d)
        return [Cell(lab, o) for lab, o in zip(labels, sq.orders)]

    def free_gen(self, d: int) -> tuple[int, ...]:
        sq = self.mod.subquot_at(d)
        idx = [i for i, o in enumerate(sq.orders) if o == 0]
        if len(idx) != 1:
            raise EngineError(f"expected one infinite summand in degree {d}")
        return tuple(1 if i == idx[0] else 0 for i in range(len(sq.orders)))

    def element(self, d: int, terms) -> tuple[int, ...] | None:
        vec = self.mod.element_vector(d, terms)
        coords = self.mod.subquot_at(d).express(vec)
        if coords is None:
            raise EngineError(f"class in degree {d} is not a cycle combination")
        out = _int_coords(coords, 2)
        return tuple(out) if any(out) else None


def eta_tower_setup(window: int, chain_smax: int = 6) -> EngineSetup:
    p = 2
    last_page = 2
    smax = chain_smax + last_page
    ku = _KuClasses(window + 1)
    cells = {}
    for deg in range(window + 2):
        row = ku.summands(deg)
        if not row:
            continue
        for s in range(smax + 1):
            cells[(deg + s, s)] = row

    rules = []
    # odd towers of the divided chain drop one step with an explicit 2-power
    e = 1
    while 5 + 2 * e <= window + 1:
        deg = 5 + 2 * e
        coeff = 2 ** (_step_count(e - 1) - _step_count(e) + 1)
        src = ku.free_gen(deg)
        tgt = tuple(coeff * t for t in ku.free_gen(deg - 2))
        for s in range(smax):
            rules.append(Rule(1, (deg + s, s), src, tgt, f"d1(z{e})"))
        e += 2
    # torsion-to-torsion differentials; each class is a period-operator
    # multiple of a torsion bottom, and the odd multiples pick up an extra
    # term by the Leibniz rule because the period operator itself drops one
    # step with coefficient two.  Targets that vanish still enter the rule
    # list as explicit d1 = 0 statements so the elimination cannot misassign
    # the span of a class that mixes several summands.
    m = 1
    while 8 * m + 4 <= window + 1:
        kv = nu(2, m)
        a = m >> kv
        t = 0
        while 8 * m + 4 + 2 * t <= window + 1:
            deg = 8 * m + 4 + 2 * t
            src = ku.element(deg, ((1, t, _bprime_gid(m)),))
            if src is None:
                break
            terms = []
            if t % 2 == 1:
                terms.append((2, t - 1, _bprime_gid(m)))
            if a != 1:
                coeff = 2 ** (nu(2, a - 1) - 1)
                terms.append((coeff, 2 ** (kv + 2) - 1 + t, _bprime_gid(m - 2**kv)))
            tgt = ku.element(deg - 2, tuple(terms)) if terms else None
            tgt = tgt or tuple([0] * len(ku.summands(deg - 2)))
            for s in range(smax):
                rules.append(Rule(1, (deg + s, s), src, tgt, f"d1(v^{t}b'{m})"))
            t += 1
        m += 1
    # two-step differentials out of the even multiples of the power-of-two
    # levels; the odd multiples that survive the first page are permanent
    n = 0
    while 8 * 2**n + 4 <= window + 1:
        j = 0
        while 8 * 2**n + 4 + 4 * j <= window + 1:
            deg = 8 * 2**n + 4 + 4 * j
            src = ku.element(deg, ((1, 2 * j, _bprime_gid(2**n)),))
            if src is None:
                break
            ee = 2 ** (n + 2) - 2 + 2 * j
            coeff = 2 ** (_step_count(ee) - n - 1)
            tgt = tuple(coeff * v for v in ku.free_gen(deg - 3))
            for s in range(smax - 1):
                rules.append(Rule(2, (deg + s, s), src, tgt, f"d2(v^{2*j}b'{2**n})"))
            j += 1
        n += 1

    # hidden multiplications by 2 from the dual torsion bottoms onto eta classes
    exts = []
    n = 1
    while 3 * 2 ** (n + 2) + 2 <= window:
        for k in range(cf.ttilde_top_degree(n) // 4 + 1):
            deg = 3 * 2 ** (n + 2) + 2 + 4 * k
            src = ku.element(deg, ((1, 2 ** (n + 1) - 1 + 2 * k, _bprime_gid(2**n)),))
            if src is None:
                raise EngineError(f"hidden extension source vanishes in degree {deg}")
            exts.append(Extension((deg, 0), src,
                                  ((1, (deg, 1), ku.free_gen(deg - 1)),)))
        n += 1
    return EngineSetup(SpectralSequence(p, cells), rules, exts,
                       last_page, window, chain_smax)


# -- eta-filtration sequence for the ko coefficients -----------------------------


def ko_base_setup(window: int, chain_smax: int = 10) -> EngineSetup:
    last_page = 3
    smax = chain_smax + last_page
    cells = {}
    for j in range(window // 2 + 2):
        label = f"v^{j}" if j else "1"
        for s in range(smax + 1):
            d = 2 * j + s
            if d <= window + 1:
                cells[(d, s)] = [Cell(label, 0)]
    rules = []
    for j in range(window // 2 + 2):
        for s in range(smax):
            if j % 2 == 1 and (2 * j + s, s) in cells:
                rules.append(Rule(1, (2 * j + s, s), (1,), (2,), f"d1(v^{j})"))
        for s in range(smax - 2):
            if j % 4 == 2 and (2 * j + s, s) in cells and (2 * j + s - 1, s + 3) in cells:
                rules.append(Rule(3, (2 * j + s, s), (1,), (1,), f"d3(v^{j})"))
    return EngineSetup(SpectralSequence(2, cells), rules, [],
                       last_page, window, chain_smax)

"""The executable law catalogue.

Every commuting diagram the library claims to satisfy is realized here as
a decidable check over enumerated finite inputs: small element spaces, a
pool of test distributions (point masses, the uniform one, and seeded
random rational ones), seeded random channels and predicates.  A law
either holds on every generated input or yields a witness: the first
offending input together with both mismatching legs.

Two catalogue entries are *expected* to fail; they pin down diagrams that
genuinely do not commute, each evaluated at a fixed counterexample.  The
suite as a whole passes when every positive law holds and both negative
ones are observed to fail.

All randomness is drawn from generators seeded per law, so a run is a
pure function of the bounds and the seed, and its rendered output is
byte-identical across repetitions.
"""

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from . import channels as ch
from .dist import (
    Channel,
    Dist,
    Predicate,
    big_tensor,
    bind,
    compose,
    ctensor,
    dtensor,
    flatten,
    flrn,
    iid,
    pred_extend,
    push,
    unit,
    update,
    validity,
)
from .elements import Pair, Space
from .errors import DomainError
from .ket import format_value
from .multiset import Multiset, accumulate, enumerate_multisets
from .pml import lifted_map, monoid_sum, pml, pml_def1, pml_def2, pml_def3_check, pml_def4

Verdict = str  # "pass" | "fail" | "expected-fail"


@dataclass(frozen=True)
class LawReport:
    name: str
    params: str
    verdict: Verdict
    witness: str | None = None

    @property
    def ok(self) -> bool:
        return self.verdict != "fail"


@dataclass(frozen=True)
class Law:
    name: str
    summary: str
    check: Callable[["LawContext"], tuple[bool, str | None]]
    expect_fail: bool = False


def _fmt(value) -> str:
    try:
        return format_value(value)
    except TypeError:
        return repr(value)


def _witness(x, lhs, rhs) -> str:
    return f"input={_fmt(x)}; lhs={_fmt(lhs)}; rhs={_fmt(rhs)}"


def _pointwise(domain: Iterable, lhs: Callable, rhs: Callable) -> tuple[bool, str | None]:
    """Evaluate two legs over a whole domain; report the first mismatch."""
    for x in domain:
        a = lhs(x)
        b = rhs(x)
        if a != b:
            return False, _witness(x, a, b)
    return True, None


class LawContext:
    """Bounds, spaces, and seeded input pools shared by the law checks."""

    def __init__(
        self,
        x_size: int = 2,
        y_size: int = 2,
        k_max: int = 3,
        l_max: int = 3,
        n_max: int = 4,
        seed: int = 0,
        n_random: int = 20,
    ):
        if min(x_size, y_size) < 1:
            raise DomainError("spaces need at least one element")
        if max(x_size, y_size) > 4:
            raise DomainError("law spaces support at most 4 elements")
        if min(k_max, l_max, n_max) < 0:
            raise DomainError("size bounds must be nonnegative")
        self.x_size = x_size
        self.y_size = y_size
        self.k_max = k_max
        self.l_max = l_max
        self.n_max = n_max
        self.seed = seed
        self.n_random = n_random
        self.X = Space(("a", "b", "c", "d")[:x_size])
        self.Y = Space(("u", "v", "w", "z")[:y_size])
        self.Z = Space(("s", "t"))
        self._cache: dict = {}

    def params(self) -> str:
        return (
            f"|X|={self.x_size} |Y|={self.y_size} K<={self.k_max} "
            f"L<={self.l_max} N<={self.n_max} seed={self.seed} random={self.n_random}"
        )

    def _rng(self, tag: str) -> random.Random:
        return random.Random(f"{self.seed}:{tag}")

    def _random_dist(self, rng: random.Random, space: Space) -> Dist:
        weights = [rng.randint(1, 9) for _ in space.elements]
        total = sum(weights)
        return Dist((x, Fraction(w, total)) for x, w in zip(space.elements, weights))

    def corner_dists(self, space: Space) -> list[Dist]:
        """Point masses plus the uniform distribution."""
        key = ("corners", space)
        if key not in self._cache:
            out = [unit(x) for x in space]
            if len(space) > 1:
                out.append(Dist.uniform(space))
            self._cache[key] = out
        return self._cache[key]

    def dist_pool(self, space: Space) -> list[Dist]:
        """Corner distributions followed by the seeded random ones."""
        key = ("pool", space)
        if key not in self._cache:
            rng = self._rng(f"dists:{space.elements}")
            out = list(self.corner_dists(space))
            seen = set(out)
            for _ in range(self.n_random):
                d = self._random_dist(rng, space)
                if d not in seen:
                    seen.add(d)
                    out.append(d)
            self._cache[key] = out
        return self._cache[key]

    def psi_pool(self, space: Space, size: int) -> list[Multiset]:
        """Multisets of distributions: all over the corners, plus random ones."""
        key = ("psis", space, size)
        if key not in self._cache:
            out = list(enumerate_multisets(Space(self.corner_dists(space)), size))
            rng = self._rng(f"psis:{space.elements}:{size}")
            pool = self.dist_pool(space)
            seen = set(out)
            for _ in range(max(4, self.n_random // 3)):
                psi = accumulate([rng.choice(pool) for _ in range(size)])
                if psi not in seen:
                    seen.add(psi)
                    out.append(psi)
            self._cache[key] = out
        return self._cache[key]

    def nested_pool(self, space: Space, size: int) -> list[Multiset]:
        """Multisets of distributions over distributions, for the squared law."""
        key = ("nested", space, size)
        if key not in self._cache:
            corners = self.corner_dists(space)
            inner: list[Dist] = [unit(d) for d in corners[:2]]
            if len(corners) > 1:
                inner.append(Dist.uniform(corners[:2]))
            rng = self._rng(f"nested:{space.elements}:{size}")
            pool = self.dist_pool(space)
            for _ in range(3):
                pair = [rng.choice(pool), rng.choice(pool)]
                w = Fraction(rng.randint(1, 3), 4)
                if pair[0] == pair[1]:
                    inner.append(unit(pair[0]))
                else:
                    inner.append(Dist({pair[0]: w, pair[1]: 1 - w}))
            out = list(enumerate_multisets(Space(inner[:3]), size))
            seen = set(out)
            for _ in range(4):
                xi = accumulate([rng.choice(inner) for _ in range(size)])
                if xi not in seen:
                    seen.add(xi)
                    out.append(xi)
            self._cache[key] = out
        return self._cache[key]

    def channel_pool(self, src: Space, dst: Space, tag: str) -> list[Channel]:
        """A few deterministic channels and a few seeded random ones."""
        key = ("channels", src, dst, tag)
        if key not in self._cache:
            out = [
                Channel.constant(src, unit(dst.elements[0])),
                Channel.deterministic(
                    src,
                    lambda x, _d=dst.elements: _d[list(src.elements).index(x) % len(_d)],
                ),
            ]
            rng = self._rng(f"channels:{tag}")
            for _ in range(3):
                table = {x: self._random_dist(rng, dst) for x in src.elements}
                out.append(Channel.from_mapping(table))
            self._cache[key] = out
        return self._cache[key]

    def function_pool(self, src: Space, dst: Space) -> list[dict]:
        """All plain functions between two small spaces, as dictionaries."""
        key = ("functions", src, dst)
        if key not in self._cache:
            images = itertools.product(dst.elements, repeat=len(src.elements))
            self._cache[key] = [dict(zip(src.elements, img)) for img in images]
        return self._cache[key]

    def predicate_pool(self, space: Space) -> list[Predicate]:
        """Evidence to update with; random ones stay strictly positive."""
        key = ("predicates", space)
        if key not in self._cache:
            elems = space.elements
            out = [
                Predicate({x: 1 for x in elems}),
                Predicate({x: (1 if i == 0 else Fraction(1, 2)) for i, x in enumerate(elems)}),
                Predicate({x: (1 if i == 0 else 0) for i, x in enumerate(elems)}),
            ]
            rng = self._rng(f"predicates:{space.elements}")
            values = [Fraction(1, 4), Fraction(1, 3), Fraction(1, 2),
                      Fraction(2, 3), Fraction(3, 4), Fraction(1)]
            for _ in range(4):
                out.append(Predicate({x: rng.choice(values) for x in elems}))
            self._cache[key] = out
        return self._cache[key]


# -- helpers shared by several checks -----------------------------------------


def _acc_dist(omega: Dist) -> Dist:
    """Push a distribution over sequences down to multisets."""
    return omega.map(accumulate)


def _power_channel(f: Channel, k: int) -> Callable[[tuple], Dist]:
    """A channel applied independently at every position of a sequence."""
    return lambda xs: big_tensor([f(x) for x in xs])


def _tensor_pairs(omega: Dist) -> Dist:
    """Apply the multiset tensor to a distribution over pairs of multisets."""
    return omega.map(lambda p: p.fst.tensor(p.snd))


def _mzip_pair(p: Pair) -> Dist:
    return ch.mzip(p.fst, p.snd)


def _iter_dd(psi_dist: Dist, times: int) -> Dist:
    out = psi_dist
    for _ in range(times):
        out = bind(out, ch.draw_delete)
    return out


# -- the catalogue -------------------------------------------------------------


def _law_acc_arr_id(ctx: LawContext):
    for k in range(ctx.k_max + 1):
        held, w = _pointwise(
            enumerate_multisets(ctx.X, k),
            lambda phi: _acc_dist(ch.arrange(phi)),
            unit,
        )
        if not held:
            return held, w
    return True, None


def _law_arr_acc_perm(ctx: LawContext):
    def oracle(xs: tuple) -> Dist:
        perms = list(itertools.permutations(xs))
        w = Fraction(1, len(perms))
        acc: dict[tuple, Fraction] = {}
        for p in perms:
            acc[p] = acc.get(p, Fraction(0)) + w
        return Dist(acc)

    for k in range(ctx.k_max + 1):
        held, w = _pointwise(
            ctx.X.power(k),
            lambda xs: ch.arrange(accumulate(xs)),
            oracle,
        )
        if not held:
            return held, w
    return True, None


def _law_arr_acc_tensor(ctx: LawContext):
    corners = ctx.corner_dists(ctx.X)
    for k in range(ctx.k_max + 1):
        held, w = _pointwise(
            itertools.product(corners, repeat=k),
            lambda ws: bind(ch.arrange(accumulate(ws)), lambda vs: big_tensor(list(vs))),
            lambda ws: bind(big_tensor(list(ws)), lambda xs: ch.arrange(accumulate(xs))),
        )
        if not held:
            return held, w
    return True, None


def _law_arr_mn_iid(ctx: LawContext):
    for k in range(ctx.k_max + 1):
        held, w = _pointwise(
            ctx.dist_pool(ctx.X),
            lambda omega: bind(ch.multinomial(omega, k), ch.arrange),
            lambda omega: iid(omega, k),
        )
        if not held:
            return held, w
    return True, None


def _law_acc_iid_mn(ctx: LawContext):
    for k in range(ctx.k_max + 1):
        held, w = _pointwise(
            ctx.dist_pool(ctx.X),
            lambda omega: _acc_dist(iid(omega, k)),
            lambda omega: ch.multinomial(omega, k),
        )
        if not held:
            return held, w
    return True, None


def _law_mn_combine(ctx: LawContext):
    for k in range(ctx.k_max + 1):
        for l in range(ctx.l_max + 1):
            held, w = _pointwise(
                ctx.dist_pool(ctx.X),
                lambda omega: ch.multinomial(omega, k + l),
                lambda omega: monoid_sum(ch.multinomial(omega, k), ch.multinomial(omega, l)),
            )
            if not held:
                return held, w
    return True, None


def _law_flrn_mn(ctx: LawContext):
    for k in range(1, ctx.k_max + 1):
        held, w = _pointwise(
            ctx.dist_pool(ctx.X),
            lambda omega: bind(ch.multinomial(omega, k), flrn),
            lambda omega: omega,
        )
        if not held:
            return held, w
    return True, None


def _law_dd_mn(ctx: LawContext):
    for k in range(ctx.k_max + 1):
        held, w = _pointwise(
            ctx.dist_pool(ctx.X),
            lambda omega: bind(ch.multinomial(omega, k + 1), ch.draw_delete),
            lambda omega: ch.multinomial(omega, k),
        )
        if not held:
            return held, w
    return True, None


def _law_flrn_dd(ctx: LawContext):
    for k in range(1, ctx.k_max + 1):
        held, w = _pointwise(
            enumerate_multisets(ctx.X, k + 1),
            lambda psi: bind(ch.draw_delete(psi), flrn),
            flrn,
        )
        if not held:
            return held, w
    return True, None


def _law_hg_dd_iter(ctx: LawContext):
    for n in range(ctx.n_max + 1):
        for k in range(n + 1):
            held, w = _pointwise(
                enumerate_multisets(ctx.X, n),
                lambda psi: ch.hypergeometric(psi, k),
                lambda psi: _iter_dd(unit(psi), n - k),
            )
            if not held:
                return held, w
    return True, None


def _law_hg_natural(ctx: LawContext):
    for f in ctx.function_pool(ctx.X, ctx.Y):
        for n in range(ctx.n_max + 1):
            for k in range(n + 1):
                held, w = _pointwise(
                    enumerate_multisets(ctx.X, n),
                    lambda psi: ch.hypergeometric(psi.map_elements(f.__getitem__), k),
                    lambda psi: ch.hypergeometric(psi, k).map(
                        lambda phi: phi.map_elements(f.__getitem__)
                    ),
                )
                if not held:
                    return held, w
    return True, None


def _law_flrn_hg(ctx: LawContext):
    for n in range(1, ctx.n_max + 1):
        for k in range(1, n + 1):
            held, w = _pointwise(
                enumerate_multisets(ctx.X, n),
                lambda psi: bind(ch.hypergeometric(psi, k), flrn),
                flrn,
            )
            if not held:
                return held, w
    return True, None


def _law_hg_hg(ctx: LawContext):
    for n in range(ctx.n_max + 1):
        for m in range(n + 1):
            for k in range(m + 1):
                held, w = _pointwise(
                    enumerate_multisets(ctx.X, n),
                    lambda psi: bind(ch.hypergeometric(psi, m), lambda phi: ch.hypergeometric(phi, k)),
                    lambda psi: ch.hypergeometric(psi, k),
                )
                if not held:
                    return held, w
    return True, None


def _law_hg_mn(ctx: LawContext):
    for k in range(ctx.k_max + 1):
        for l in range(ctx.l_max + 1):
            held, w = _pointwise(
                ctx.dist_pool(ctx.X),
                lambda omega: bind(ch.multinomial(omega, k + l), lambda psi: ch.hypergeometric(psi, k)),
                lambda omega: ch.multinomial(omega, k),
            )
            if not held:
                return held, w
    return True, None


def _law_zip_iid(ctx: LawContext):
    for k in range(ctx.k_max + 1):
        held, w = _pointwise(
            (Pair(a, b) for a in ctx.dist_pool(ctx.X) for b in ctx.dist_pool(ctx.Y)),
            lambda p: dtensor(iid(p.fst, k), iid(p.snd, k)).map(
                lambda q: ch.zip_tuples(q.fst, q.snd)
            ),
            lambda p: iid(dtensor(p.fst, p.snd), k),
        )
        if not held:
            return held, w
    return True, None


def _law_zip_bigtensor(ctx: LawContext):
    cx = ctx.corner_dists(ctx.X)
    cy = ctx.corner_dists(ctx.Y)
    for k in range(ctx.k_max + 1):
        held, w = _pointwise(
            (Pair(ws, vs)
             for ws in itertools.product(cx, repeat=k)
             for vs in itertools.product(cy, repeat=k)),
            lambda p: dtensor(big_tensor(list(p.fst)), big_tensor(list(p.snd))).map(
                lambda q: ch.zip_tuples(q.fst, q.snd)
            ),
            lambda p: big_tensor([dtensor(a, b) for a, b in zip(p.fst, p.snd)]),
        )
        if not held:
            return held, w
    return True, None


def _law_mzip_natural(ctx: LawContext):
    for f in ctx.function_pool(ctx.X, ctx.Y):
        for g in ctx.function_pool(ctx.Y, ctx.X):
            for k in range(ctx.k_max + 1):
                held, w = _pointwise(
                    (Pair(phi, psi)
                     for phi in enumerate_multisets(ctx.X, k)
                     for psi in enumerate_multisets(ctx.Y, k)),
                    lambda p: ch.mzip(
                        p.fst.map_elements(f.__getitem__),
                        p.snd.map_elements(g.__getitem__),
                    ),
                    lambda p: ch.mzip(p.fst, p.snd).map(
                        lambda theta: theta.map_elements(
                            lambda q: Pair(f[q.fst], g[q.snd])
                        )
                    ),
                )
                if not held:
                    return held, w
    return True, None


def _law_mzip_unit(ctx: LawContext):
    for k in range(ctx.k_max + 1):
        held, w = _pointwise(
            (Pair(phi, y) for phi in enumerate_multisets(ctx.X, k) for y in ctx.Y),
            lambda p: ch.mzip(p.fst, Multiset({p.snd: k})),
            lambda p: unit(p.fst.tensor(Multiset({p.snd: 1}))),
        )
        if not held:
            return held, w
    return True, None


def _law_mzip_assoc(ctx: LawContext):
    def reassoc(theta: Multiset) -> Multiset:
        return theta.map_elements(lambda p: Pair(p.fst.fst, Pair(p.fst.snd, p.snd)))

    for k in range(min(ctx.k_max, 3) + 1):
        held, w = _pointwise(
            ((phi, psi, chi)
             for phi in enumerate_multisets(ctx.X, k)
             for psi in enumerate_multisets(ctx.Y, k)
             for chi in enumerate_multisets(ctx.Z, k)),
            lambda t: bind(ch.mzip(t[0], t[1]), lambda th: ch.mzip(th, t[2])).map(reassoc),
            lambda t: bind(ch.mzip(t[1], t[2]), lambda th: ch.mzip(t[0], th)),
        )
        if not held:
            return held, w
    return True, None


def _law_mzip_proj(ctx: LawContext):
    for k in range(ctx.k_max + 1):
        pairs = [Pair(phi, psi)
                 for phi in enumerate_multisets(ctx.X, k)
                 for psi in enumerate_multisets(ctx.Y, k)]
        held, w = _pointwise(
            pairs,
            lambda p: ch.mzip(p.fst, p.snd).map(
                lambda theta: theta.map_elements(lambda q: q.fst)
            ),
            lambda p: unit(p.fst),
        )
        if not held:
            return held, w
        held, w = _pointwise(
            pairs,
            lambda p: ch.mzip(p.fst, p.snd).map(
                lambda theta: theta.map_elements(lambda q: q.snd)
            ),
            lambda p: unit(p.snd),
        )
        if not held:
            return held, w
    return True, None


def _law_mzip_arr(ctx: LawContext):
    for k in range(ctx.k_max + 1):
        held, w = _pointwise(
            (Pair(phi, psi)
             for phi in enumerate_multisets(ctx.X, k)
             for psi in enumerate_multisets(ctx.Y, k)),
            lambda p: bind(ch.mzip(p.fst, p.snd), ch.arrange),
            lambda p: dtensor(ch.arrange(p.fst), ch.arrange(p.snd)).map(
                lambda q: ch.zip_tuples(q.fst, q.snd)
            ),
        )
        if not held:
            return held, w
    return True, None


def _law_mzip_dd(ctx: LawContext):
    for k in range(ctx.k_max + 1):
        held, w = _pointwise(
            (Pair(phi, psi)
             for phi in enumerate_multisets(ctx.X, k + 1)
             for psi in enumerate_multisets(ctx.Y, k + 1)),
            lambda p: bind(
                dtensor(ch.draw_delete(p.fst), ch.draw_delete(p.snd)), _mzip_pair
            ),
            lambda p: bind(ch.mzip(p.fst, p.snd), ch.draw_delete),
        )
        if not held:
            return held, w
    return True, None


def _law_mzip_diag_counterexample(ctx: LawContext):
    # The zipping operation must not commute with duplication; search for
    # one multiset witnessing the failure.
    for phi in enumerate_multisets(ctx.X, 2):
        lhs = ch.mzip(phi, phi)
        rhs = unit(phi.map_elements(lambda x: Pair(x, x)))
        if lhs != rhs:
            return True, None
    return False, "no counterexample found: duplication commuted on every size-2 multiset"


def _law_mzip_flrn(ctx: LawContext):
    for k in range(1, ctx.k_max + 1):
        held, w = _pointwise(
            (Pair(phi, psi)
             for phi in enumerate_multisets(ctx.X, k)
             for psi in enumerate_multisets(ctx.Y, k)),
            lambda p: bind(ch.mzip(p.fst, p.snd), flrn),
            lambda p: flrn(p.fst.tensor(p.snd)),
        )
        if not held:
            return held, w
    return True, None


def _law_mzip_mn(ctx: LawContext):
    for k in range(ctx.k_max + 1):
        held, w = _pointwise(
            (Pair(a, b) for a in ctx.dist_pool(ctx.X) for b in ctx.dist_pool(ctx.Y)),
            lambda p: bind(
                dtensor(ch.multinomial(p.fst, k), ch.multinomial(p.snd, k)), _mzip_pair
            ),
            lambda p: ch.multinomial(dtensor(p.fst, p.snd), k),
        )
        if not held:
            return held, w
    return True, None


def _law_mzip_hg(ctx: LawContext):
    for n in range(ctx.n_max + 1):
        for k in range(n + 1):
            held, w = _pointwise(
                (Pair(phi, psi)
                 for phi in enumerate_multisets(ctx.X, n)
                 for psi in enumerate_multisets(ctx.Y, n)),
                lambda p: bind(ch.mzip(p.fst, p.snd), lambda theta: ch.hypergeometric(theta, k)),
                lambda p: bind(
                    dtensor(ch.hypergeometric(p.fst, k), ch.hypergeometric(p.snd, k)),
                    _mzip_pair,
                ),
            )
            if not held:
                return held, w
    return True, None


def _law_mn_tensor_mismatch(ctx: LawContext):
    # Pinned counterexample: drawing 1 and 2 from the uniform coin and
    # tensoring the draws is not drawing 2 from the product distribution.
    omega = Dist.uniform(Space(("a", "b")))
    lhs = ch.multinomial(dtensor(omega, omega), 2)
    rhs = _tensor_pairs(dtensor(ch.multinomial(omega, 1), ch.multinomial(omega, 2)))
    if lhs == rhs:
        return True, None
    return False, _witness(Pair(omega, omega), lhs, rhs)


def _law_pml_defs_agree(ctx: LawContext):
    for size in range(min(ctx.k_max + 1, 4) + 1):
        for psi in ctx.psi_pool(ctx.X, size):
            results = {
                "joint-outcomes": pml_def1(psi),
                "parallel-draws": pml_def2(psi),
                "monoid-algebra": pml_def4(psi),
            }
            baseline = results["parallel-draws"]
            for tag, got in results.items():
                if got != baseline:
                    return False, f"input={_fmt(psi)}; {tag} disagreed: {_fmt(got)} vs {_fmt(baseline)}"
            expanded = [w for w, n in psi.entries for _ in range(n)]
            if not pml_def3_check(expanded):
                return False, f"input={_fmt(psi)}; triangle characterization failed"
    return True, None


def _law_pml_squeeze_left(ctx: LawContext):
    corners = ctx.corner_dists(ctx.X)
    for k in range(ctx.k_max + 1):
        held, w = _pointwise(
            itertools.product(corners, repeat=k),
            lambda ws: pml(accumulate(ws)),
            lambda ws: _acc_dist(big_tensor(list(ws))),
        )
        if not held:
            return held, w
    return True, None


def _law_pml_squeeze_right(ctx: LawContext):
    for k in range(ctx.k_max + 1):
        held, w = _pointwise(
            ctx.psi_pool(ctx.X, k),
            lambda psi: bind(pml(psi), ch.arrange),
            lambda psi: bind(ch.arrange(psi), lambda ws: big_tensor(list(ws))),
        )
        if not held:
            return held, w
    return True, None


def _law_pml_flrn(ctx: LawContext):
    for k in range(1, ctx.k_max + 1):
        held, w = _pointwise(
            ctx.psi_pool(ctx.X, k),
            lambda psi: bind(pml(psi), flrn),
            lambda psi: flatten(flrn(psi)),
        )
        if not held:
            return held, w
    return True, None


def _law_pml_dd(ctx: LawContext):
    for k in range(ctx.k_max + 1):
        held, w = _pointwise(
            ctx.psi_pool(ctx.X, k + 1),
            lambda psi: bind(pml(psi), ch.draw_delete),
            lambda psi: bind(ch.draw_delete(psi), pml),
        )
        if not held:
            return held, w
    return True, None


def _law_pml_hg(ctx: LawContext):
    for n in range(ctx.n_max + 1):
        for k in range(n + 1):
            held, w = _pointwise(
                ctx.psi_pool(ctx.X, n),
                lambda psi: bind(pml(psi), lambda phi: ch.hypergeometric(phi, k)),
                lambda psi: bind(ch.hypergeometric(psi, k), pml),
            )
            if not held:
                return held, w
    return True, None


def _law_pml_sum(ctx: LawContext):
    for k in range(ctx.k_max + 1):
        for l in range(ctx.l_max + 1):
            held, w = _pointwise(
                (Pair(a, b)
                 for a in ctx.psi_pool(ctx.X, k)
                 for b in ctx.psi_pool(ctx.X, l)),
                lambda p: pml(p.fst + p.snd),
                lambda p: monoid_sum(pml(p.fst), pml(p.snd)),
            )
            if not held:
                return held, w
    return True, None


def _law_pml_unit(ctx: LawContext):
    for k in range(ctx.k_max + 1):
        held, w = _pointwise(
            enumerate_multisets(ctx.X, k),
            lambda phi: pml(phi.map_elements(unit)),
            unit,
        )
        if not held:
            return held, w
    return True, None


def _law_pml_mult(ctx: LawContext):
    for size in range(min(ctx.k_max, 3) + 1):
        held, w = _pointwise(
            ctx.nested_pool(ctx.X, size),
            lambda xi: pml(xi.map_elements(flatten)),
            lambda xi: flatten(pml(xi).map(pml)),
        )
        if not held:
            return held, w
    return True, None


def _law_lift_id(ctx: LawContext):
    for k in range(ctx.k_max + 1):
        lifted = lifted_map(Channel.identity(ctx.X), k)
        held, w = _pointwise(enumerate_multisets(ctx.X, k), lifted, unit)
        if not held:
            return held, w
    return True, None


def _law_lift_compose(ctx: LawContext):
    for f in ctx.channel_pool(ctx.X, ctx.Y, "lift-f"):
        for g in ctx.channel_pool(ctx.Y, ctx.Z, "lift-g"):
            for k in range(ctx.k_max + 1):
                lf = lifted_map(f, k)
                lg = lifted_map(g, k)
                held, w = _pointwise(
                    enumerate_multisets(ctx.X, k),
                    lifted_map(compose(g, f), k),
                    lambda phi: push(lg, lf(phi)),
                )
                if not held:
                    return held, w
    return True, None


def _law_mzip_pml(ctx: LawContext):
    for k in range(ctx.k_max + 1):
        held, w = _pointwise(
            (Pair(a, b)
             for a in ctx.psi_pool(ctx.X, k)
             for b in ctx.psi_pool(ctx.Y, k)),
            lambda p: bind(dtensor(pml(p.fst), pml(p.snd)), _mzip_pair),
            lambda p: bind(
                ch.mzip(p.fst, p.snd),
                lambda theta: pml(theta.map_elements(lambda q: dtensor(q.fst, q.snd))),
            ),
        )
        if not held:
            return held, w
    return True, None


def _law_lift_mzip(ctx: LawContext):
    for f in ctx.channel_pool(ctx.X, ctx.Y, "monoidal-f")[:3]:
        for g in ctx.channel_pool(ctx.Z, ctx.X, "monoidal-g")[:3]:
            for k in range(ctx.k_max + 1):
                lf = lifted_map(f, k)
                lg = lifted_map(g, k)
                lfg = lifted_map(ctensor(f, g), k)
                held, w = _pointwise(
                    (Pair(phi, psi)
                     for phi in enumerate_multisets(ctx.X, k)
                     for psi in enumerate_multisets(ctx.Z, k)),
                    lambda p: bind(dtensor(lf(p.fst), lg(p.snd)), _mzip_pair),
                    lambda p: bind(ch.mzip(p.fst, p.snd), lfg),
                )
                if not held:
                    return held, w
    return True, None


def _law_lift_sum(ctx: LawContext):
    for f in ctx.channel_pool(ctx.X, ctx.Y, "sum-f")[:3]:
        for k in range(ctx.k_max + 1):
            for l in range(ctx.l_max + 1):
                lk = lifted_map(f, k)
                ll = lifted_map(f, l)
                lkl = lifted_map(f, k + l)
                held, w = _pointwise(
                    (Pair(phi, psi)
                     for phi in enumerate_multisets(ctx.X, k)
                     for psi in enumerate_multisets(ctx.X, l)),
                    lambda p: lkl(p.fst + p.snd),
                    lambda p: monoid_sum(lk(p.fst), ll(p.snd)),
                )
                if not held:
                    return held, w
    return True, None


def _law_arr_chan_natural(ctx: LawContext):
    for f in ctx.channel_pool(ctx.X, ctx.Y, "natural")[:3]:
        for k in range(ctx.k_max + 1):
            lf = lifted_map(f, k)
            held, w = _pointwise(
                enumerate_multisets(ctx.X, k),
                lambda phi: bind(ch.arrange(phi), _power_channel(f, k)),
                lambda phi: bind(lf(phi), ch.arrange),
            )
            if not held:
                return held, w
    return True, None


def _law_acc_chan_natural(ctx: LawContext):
    for f in ctx.channel_pool(ctx.X, ctx.Y, "natural")[:3]:
        for k in range(ctx.k_max + 1):
            lf = lifted_map(f, k)
            held, w = _pointwise(
                ctx.X.power(k),
                lambda xs: lf(accumulate(xs)),
                lambda xs: _acc_dist(_power_channel(f, k)(xs)),
            )
            if not held:
                return held, w
    return True, None


def _law_dd_chan_natural(ctx: LawContext):
    for f in ctx.channel_pool(ctx.X, ctx.Y, "natural")[:3]:
        for k in range(ctx.k_max + 1):
            lifted_big = lifted_map(f, k + 1)
            lifted_small = lifted_map(f, k)
            held, w = _pointwise(
                enumerate_multisets(ctx.X, k + 1),
                lambda phi: bind(lifted_big(phi), ch.draw_delete),
                lambda phi: bind(ch.draw_delete(phi), lifted_small),
            )
            if not held:
                return held, w
    return True, None


def _law_mn_chan_natural(ctx: LawContext):
    for f in ctx.channel_pool(ctx.X, ctx.Y, "natural")[:3]:
        for k in range(ctx.k_max + 1):
            lf = lifted_map(f, k)
            held, w = _pointwise(
                ctx.dist_pool(ctx.X),
                lambda omega: ch.multinomial(push(f, omega), k),
                lambda omega: bind(ch.multinomial(omega, k), lf),
            )
            if not held:
                return held, w
    return True, None


def _law_hg_chan_natural(ctx: LawContext):
    for f in ctx.channel_pool(ctx.X, ctx.Y, "natural")[:3]:
        for l in range(ctx.n_max + 1):
            for k in range(l + 1):
                lifted_big = lifted_map(f, l)
                lifted_small = lifted_map(f, k)
                held, w = _pointwise(
                    enumerate_multisets(ctx.X, l),
                    lambda phi: bind(lifted_big(phi), lambda psi: ch.hypergeometric(psi, k)),
                    lambda phi: bind(ch.hypergeometric(phi, k), lifted_small),
                )
                if not held:
                    return held, w
    return True, None


def _law_pml_tensor_mismatch(ctx: LawContext):
    # Pinned counterexample with a two-copy multiset on one side and a
    # single-copy multiset on the other.
    omega = Dist({"a": Fraction(3, 4), "b": Fraction(1, 4)})
    rho = Dist({"0": Fraction(2, 3), "1": Fraction(1, 3)})
    psi = Multiset({omega: 2})
    phi = Multiset({rho: 1})
    lhs = _tensor_pairs(dtensor(pml(psi), pml(phi)))
    rhs = pml(psi.tensor(phi).map_elements(lambda p: dtensor(p.fst, p.snd)))
    if lhs == rhs:
        return True, None
    return False, _witness(Pair(psi, phi), lhs, rhs)


def _law_sampling(ctx: LawContext):
    for c in ctx.channel_pool(ctx.X, ctx.Y, "sampling"):
        for k in range(1, ctx.k_max + 1):
            lc = lifted_map(c, k)
            held, w = _pointwise(
                ctx.dist_pool(ctx.X),
                lambda omega: bind(bind(ch.multinomial(omega, k), lc), flrn),
                lambda omega: push(c, omega),
            )
            if not held:
                return held, w
    return True, None


def _law_mn_update_validity(ctx: LawContext):
    for p in ctx.predicate_pool(ctx.X):
        ext = pred_extend(p)
        for k in range(ctx.k_max + 1):
            held, w = _pointwise(
                ctx.dist_pool(ctx.X),
                lambda omega: validity(ch.multinomial(omega, k), ext),
                lambda omega: validity(omega, p) ** k,
            )
            if not held:
                return held, w
    return True, None


def _law_mn_update(ctx: LawContext):
    for p in ctx.predicate_pool(ctx.X):
        ext = pred_extend(p)
        for k in range(ctx.k_max + 1):
            pool = [w for w in ctx.dist_pool(ctx.X) if validity(w, p) != 0]
            held, w = _pointwise(
                pool,
                lambda omega: update(ch.multinomial(omega, k), ext),
                lambda omega: ch.multinomial(update(omega, p), k),
            )
            if not held:
                return held, w
    return True, None


def _law_pml_update_validity(ctx: LawContext):
    for p in ctx.predicate_pool(ctx.X):
        ext = pred_extend(p)
        for size in range(ctx.k_max + 1):
            def product_leg(psi: Multiset) -> Fraction:
                out = Fraction(1)
                for omega, n in psi.entries:
                    out *= validity(omega, p) ** n
                return out

            held, w = _pointwise(
                ctx.psi_pool(ctx.X, size),
                lambda psi: validity(pml(psi), ext),
                product_leg,
            )
            if not held:
                return held, w
    return True, None


def _law_pml_update(ctx: LawContext):
    for p in ctx.predicate_pool(ctx.X):
        ext = pred_extend(p)
        for size in range(ctx.k_max + 1):
            pool = [
                psi for psi in ctx.psi_pool(ctx.X, size)
                if all(validity(omega, p) != 0 for omega, _ in psi.entries)
            ]
            held, w = _pointwise(
                pool,
                lambda psi: update(pml(psi), ext),
                lambda psi: pml(psi.map_elements(lambda omega: update(omega, p))),
            )
            if not held:
                return held, w
    return True, None


def _law_msum_deterministic(ctx: LawContext):
    for k in range(ctx.k_max + 1):
        for l in range(ctx.l_max + 1):
            held, w = _pointwise(
                (Pair(phi, psi)
                 for phi in enumerate_multisets(ctx.X, k)
                 for psi in enumerate_multisets(ctx.X, l)),
                lambda p: ch.msum_channel(p.fst, p.snd),
                lambda p: unit(p.fst + p.snd),
            )
            if not held:
                return held, w
    return True, None


LAWS: tuple[Law, ...] = (
    Law("acc-arr-id", "collapsing the arrangements of a multiset returns it", _law_acc_arr_id),
    Law("arr-acc-perm", "arranging a collapsed sequence is the uniform permutation mix", _law_arr_acc_perm),
    Law("arr-acc-tensor", "the permutation mix commutes with the big tensor", _law_arr_acc_tensor),
    Law("arr-mn-iid", "arranging multinomial draws gives independent copies", _law_arr_mn_iid),
    Law("acc-iid-mn", "collapsing independent copies gives multinomial draws", _law_acc_iid_mn),
    Law("mn-combine", "draws of combined sizes are sums of independent draws", _law_mn_combine),
    Law("flrn-mn", "learning from draws with replacement recovers the urn", _law_flrn_mn),
    Law("dd-mn", "deleting one element from a draw shrinks the draw size", _law_dd_mn),
    Law("flrn-dd", "learning is unchanged by deleting one random element", _law_flrn_dd),
    Law("hg-dd-iter", "draws without replacement are iterated single deletions", _law_hg_dd_iter),
    Law("hg-natural", "relabeling the urn commutes with draws without replacement", _law_hg_natural),
    Law("flrn-hg", "learning from draws without replacement recovers the urn", _law_flrn_hg),
    Law("hg-hg", "two-stage subsampling equals one-stage subsampling", _law_hg_hg),
    Law("hg-mn", "subsampling a replacement draw is a smaller replacement draw", _law_hg_mn),
    Law("zip-iid", "zipping independent copies matches copies of the product", _law_zip_iid),
    Law("zip-bigtensor", "zipping commutes with big tensors of distributions", _law_zip_bigtensor),
    Law("mzip-natural", "relabeling both sides commutes with multiset zipping", _law_mzip_natural),
    Law("mzip-unit", "zipping against a constant multiset is deterministic", _law_mzip_unit),
    Law("mzip-assoc", "multiset zipping is associative up to rebracketing", _law_mzip_assoc),
    Law("mzip-proj", "projecting a zipped multiset returns either input", _law_mzip_proj),
    Law("mzip-diag-counterexample", "zipping a multiset with itself is not duplication", _law_mzip_diag_counterexample),
    Law("mzip-arr", "arranging a zipped multiset zips the arrangements", _law_mzip_arr),
    Law("mzip-dd", "deleting one element on both sides commutes with zipping", _law_mzip_dd),
    Law("mzip-flrn", "learning from a zipped multiset learns the tensor", _law_mzip_flrn),
    Law("mzip-mn", "zipped replacement draws are draws from the product", _law_mzip_mn),
    Law("mzip-hg", "zipping commutes with draws without replacement", _law_mzip_hg),
    Law("mn-tensor-mismatch", "tensoring draws of different sizes is NOT a product draw", _law_mn_tensor_mismatch, expect_fail=True),
    Law("pml-defs-agree", "all formulations of the parallel draw law coincide", _law_pml_defs_agree),
    Law("pml-squeeze-left", "the law collapses tuples of distributions as tensors do", _law_pml_squeeze_left),
    Law("pml-squeeze-right", "arranging the law's output tensors the arrangements", _law_pml_squeeze_right),
    Law("pml-flrn", "learning from the law averages the member distributions", _law_pml_flrn),
    Law("pml-dd", "single deletion commutes with the parallel draw law", _law_pml_dd),
    Law("pml-hg", "draws without replacement commute with the law", _law_pml_hg),
    Law("pml-sum", "the law turns multiset sums into independent sums", _law_pml_sum),
    Law("pml-unit", "a multiset of point masses maps to a point mass", _law_pml_unit),
    Law("pml-mult", "flattening inner distributions commutes with the law", _law_pml_mult),
    Law("lift-id", "lifting the identity channel is the identity", _law_lift_id),
    Law("lift-compose", "lifting preserves channel composition", _law_lift_compose),
    Law("mzip-pml", "the lifted tensor intertwines the law and zipping", _law_mzip_pml),
    Law("lift-mzip", "lifted channels form a monoidal pair with zipping", _law_lift_mzip),
    Law("lift-sum", "lifted channels commute with multiset sums", _law_lift_sum),
    Law("arr-chan-natural", "arrangement is natural for lifted channels", _law_arr_chan_natural),
    Law("acc-chan-natural", "accumulation is natural for lifted channels", _law_acc_chan_natural),
    Law("dd-chan-natural", "single deletion is natural for lifted channels", _law_dd_chan_natural),
    Law("mn-chan-natural", "replacement draws are natural for lifted channels", _law_mn_chan_natural),
    Law("hg-chan-natural", "no-replacement draws are natural for lifted channels", _law_hg_chan_natural),
    Law("pml-tensor-mismatch", "the law does NOT commute with mixed-size tensors", _law_pml_tensor_mismatch, expect_fail=True),
    Law("sampling-correctness", "sample, transform, resample, learn: the composite state", _law_sampling),
    Law("mn-update-validity", "evidence on draws has the product validity", _law_mn_update_validity),
    Law("mn-update", "updating draws equals drawing from the update", _law_mn_update),
    Law("pml-update-validity", "evidence on the law multiplies member validities", _law_pml_update_validity),
    Law("pml-update", "updating the law's output updates every member", _law_pml_update),
    Law("msum-deterministic", "concatenating arrangements collapses to multiset sum", _law_msum_deterministic),
)

_BY_NAME = {law.name: law for law in LAWS}


def catalogue() -> list[tuple[str, str]]:
    """Names and one-line summaries of every law, in suite order."""
    return [(law.name, law.summary) for law in LAWS]


def run_law(law: Law, ctx: LawContext) -> LawReport:
    held, witness = law.check(ctx)
    if law.expect_fail:
        if held:
            return LawReport(law.name, ctx.params(), "fail",
                             "expected the two legs to differ, but they agree")
        return LawReport(law.name, ctx.params(), "expected-fail", witness)
    if held:
        return LawReport(law.name, ctx.params(), "pass")
    return LawReport(law.name, ctx.params(), "fail", witness)


def run_laws(
    x_size: int = 2,
    y_size: int = 2,
    k_max: int = 3,
    l_max: int = 3,
    n_max: int = 4,
    seed: int = 0,
    n_random: int = 20,
    only: str | None = None,
) -> list[LawReport]:
    """Run the catalogue (or one named law) and return the reports."""
    ctx = LawContext(x_size=x_size, y_size=y_size, k_max=k_max, l_max=l_max,
                     n_max=n_max, seed=seed, n_random=n_random)
    if only is not None:
        if only not in _BY_NAME:
            raise DomainError(f"unknown law {only!r}; see the catalogue listing")
        return [run_law(_BY_NAME[only], ctx)]
    return [run_law(law, ctx) for law in LAWS]


def render_reports(reports: Sequence[LawReport]) -> str:
    """Stable text rendering: one line per law plus a summary."""
    width = max(len(r.name) for r in reports)
    lines = []
    for r in reports:
        lines.append(f"{r.verdict.upper():13} {r.name.ljust(width)}  [{r.params}]")
        if r.witness:
            lines.append(f"{'':13} {r.witness}")
    counts = {"pass": 0, "fail": 0, "expected-fail": 0}
    for r in reports:
        counts[r.verdict] += 1
    lines.append(
        f"summary: {counts['pass']} pass, {counts['expected-fail']} expected-fail, "
        f"{counts['fail']} fail"
    )
    return "\n".join(lines)

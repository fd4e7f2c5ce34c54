"""Exhaustive evaluation on small transitive irreflexive frames.

Every modal formula up to a size bound is evaluated on every frame with at
most ``max_worlds`` worlds (one frame per isomorphism class) under every
valuation, with truth values kept as boolean arrays over all (model, world)
pairs.  This is the brute-force check for the GL decision procedure.
"""

from __future__ import annotations

import itertools

import numpy as np

from .glp import BOT, Atom, Box, MAnd, MImp, MNot, MOr, gl_decide


def strict_orders(k: int) -> list:
    """Transitive irreflexive relations on k worlds, one per isomorphism class."""
    pairs = [(a, b) for a in range(k) for b in range(k) if a != b]
    seen, out = set(), []
    perms = list(itertools.permutations(range(k)))
    for mask in range(1 << len(pairs)):
        rel = frozenset(p for i, p in enumerate(pairs) if mask >> i & 1)
        if any((a, d) not in rel for (a, b) in rel for (c, d) in rel if b == c):
            continue
        canon = min(tuple(sorted((pi[a], pi[b]) for a, b in rel)) for pi in perms)
        if canon not in seen:
            seen.add(canon)
            out.append(rel)
    return out


class FrameSpace:
    """All models over the frames with 1..max_worlds worlds and the given atoms."""

    def __init__(self, max_worlds: int = 4, atoms=("p", "q")):
        self.atoms = tuple(atoms)
        self.blocks = []
        for k in range(1, max_worlds + 1):
            frames = strict_orders(k)
            vals = list(itertools.product([False, True], repeat=k * len(self.atoms)))
            rel = np.zeros((len(frames) * len(vals), k, k), dtype=bool)
            truth = np.zeros((len(self.atoms), len(frames) * len(vals), k), dtype=bool)
            m = 0
            for fr in frames:
                for v in vals:
                    for a, b in fr:
                        rel[m, a, b] = True
                    for i in range(len(self.atoms)):
                        truth[i, m] = v[i * k:(i + 1) * k]
                    m += 1
            self.blocks.append((rel, truth))
        self.frame_counts = [len(strict_orders(k)) for k in range(1, max_worlds + 1)]

    def atom(self, i):
        return tuple(t[i] for _, t in self.blocks)

    def bot(self):
        return tuple(np.zeros(t.shape[1:], dtype=bool) for _, t in self.blocks)

    def box(self, vec):
        return tuple(~np.any(r & ~v[:, None, :], axis=2) for (r, _), v in zip(self.blocks, vec))

    @staticmethod
    def valid(vec) -> bool:
        return all(bool(v.all()) for v in vec)


def formulas_by_size(space: FrameSpace, max_size: int, level: int = 0):
    """Yield (formula, truth vector) for every formula of size <= max_size.

    Only formulas below max_size are kept in memory.
    """
    table = {1: [(Atom(a), space.atom(i)) for i, a in enumerate(space.atoms)] + [(BOT, space.bot())]}
    yield from table[1]
    for s in range(2, max_size + 1):
        cur = []
        for f, v in table[s - 1]:
            cur.append((MNot(f), tuple(~x for x in v)))
            cur.append((Box(level, f), space.box(v)))
        for ls in range(1, s - 1):
            rs = s - 1 - ls
            for f, v in table[ls]:
                for g, w in table[rs]:
                    cur.append((MAnd(f, g), tuple(a & b for a, b in zip(v, w))))
                    cur.append((MOr(f, g), tuple(a | b for a, b in zip(v, w))))
                    cur.append((MImp(f, g), tuple(~a | b for a, b in zip(v, w))))
        if s < max_size:
            table[s] = cur
        yield from cur


def cross_check(max_size: int = 6, max_worlds: int = 4, atoms=("p", "q")) -> dict:
    """Compare gl_decide with exhaustive frame search on all small formulas."""
    space = FrameSpace(max_worlds, atoms)
    total = valid = 0
    unsound, missed = [], []
    for f, vec in formulas_by_size(space, max_size):
        total += 1
        r = gl_decide(f)
        has_counter = not space.valid(vec)
        if r.valid:
            valid += 1
            if has_counter:
                unsound.append(f)
        elif not has_counter:
            missed.append(f)
    return {"formulas": total, "valid": valid, "invalid": total - valid,
            "frames": space.frame_counts, "valid_with_countermodel": unsound,
            "invalid_without_small_countermodel": missed}

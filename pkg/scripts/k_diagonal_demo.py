"""Generic filters over finite binary conditions.

Meets D_0..D_{n-1} and one E_h per pattern, then shows the resulting
function differs from every pattern somewhere below n.
"""
import argparse
from dataclasses import dataclass, field

from setforce.poset import (BinaryCondition, DefinedAt, DisagreesWith, generic_filter, k_poset,
                            union_of_filter)


@dataclass
class Config:
    length: int = 8
    patterns: list = field(default_factory=lambda: ["0", "1", "01", "0011", "110"])
    fuel: int = 5000


def run(cfg: Config):
    dense = [DisagreesWith(p) for p in cfg.patterns] + [DefinedAt(n) for n in range(cfg.length)]
    res = generic_filter(k_poset(), dense, BinaryCondition(), fuel=cfg.fuel)
    f = union_of_filter(res.chain)
    rows = []
    for e in dense[:len(cfg.patterns)]:
        diff = next(k for k, v in f.items if v != e.h(k))
        rows.append((e.name, diff))
    return f, rows


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--length", type=int, default=Config.length)
    ap.add_argument("--patterns", nargs="*", default=Config().patterns)
    ap.add_argument("--fuel", type=int, default=Config.fuel)
    a = ap.parse_args()
    f, rows = run(Config(a.length, a.patterns, a.fuel))
    print("f_G:", "".join(str(v) for _, v in sorted(f.items)))
    for name, k in rows:
        print(f"{name:>8}  first disagreement at {k}")


if __name__ == "__main__":
    main()

"""Pairwise intersections of the triangular family N^i below a bound.

For i > j the intersection has at most i - j points; the table prints the
observed size next to that bound, then the diagonal points beta_i.
"""
import argparse
from dataclasses import dataclass

from setforce.adfamily import ad_check, diagonalize, triangular_family


@dataclass
class Config:
    size: int = 8
    below: int = 100_000


def run(cfg: Config):
    fam = [triangular_family(i) for i in range(cfg.size)]
    table = [[ad_check(fam[i], fam[j], cfg.below)[0] if i != j else None for j in range(cfg.size)]
             for i in range(cfg.size)]
    return table, diagonalize(fam, cfg.size, cfg.below)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--size", type=int, default=Config.size)
    ap.add_argument("--below", type=int, default=Config.below)
    a = ap.parse_args()
    table, betas = run(Config(a.size, a.below))
    print("      " + " ".join(f"N{j:<3}" for j in range(a.size)))
    for i, row in enumerate(table):
        cells = ["  - " if v is None else f"{v:>2}/{abs(i - j)}" for j, v in enumerate(row)]
        print(f"N{i:<4} " + " ".join(cells))
    print("beta:", ", ".join(map(str, betas)))


if __name__ == "__main__":
    main()

"""Survey the corpus: fiberedness, verdicts, S^3 answers and contact constructions.

Writes a JSON summary (default survey.json) and prints the headline counts.

    python3 scripts/corpus_survey.py --grid 1000 --out survey.json
"""

import argparse
import json
import math
from collections import Counter

from splice_forge.calculus import is_fibered
from splice_forge.contact import assemble_construction
from splice_forge.corpus import CorpusConfig, corpus
from splice_forge.errors import PreconditionError
from splice_forge.normalize import check_s3_cabling, minimize
from splice_forge.tightness import decide_tight


def survey(cfg: CorpusConfig, grid: int) -> dict:
    counts = Counter()
    worst = {"tw": math.inf, "lemma33": math.inf}
    rows = []
    for e in corpus(cfg):
        d = e.diagram
        row = {"name": e.name, "nodes": len(d.nodes), "s3": check_s3_cabling(d).value}
        fib = is_fibered(d).fibered
        row["fibered"] = fib
        counts["fibered" if fib else "not fibered"] += 1
        counts[f"s3 {row['s3']}"] += 1
        if fib:
            row["verdict"] = decide_tight(d, assume_s3=True).verdict.value
            counts[row["verdict"]] += 1
            if not minimize(d)[0].is_degenerate:
                for style in ("tw", "lemma33"):
                    try:
                        con = assemble_construction(d, style, grid=grid)
                    except PreconditionError:
                        counts[f"{style} precondition"] += 1
                        continue
                    counts[f"{style} built"] += 1
                    worst[style] = min(worst[style], con.min_contact)
                    row[style] = {"min_contact": con.min_contact, "lutz": [a for a, _ in con.lutz]}
                    if con.lutz:
                        counts[f"{style} with Lutz crossing"] += 1
        rows.append(row)
    return {"counts": dict(sorted(counts.items())), "worst_min_contact": worst, "diagrams": rows}


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--grid", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=CorpusConfig.seed)
    ap.add_argument("--out", default="survey.json")
    args = ap.parse_args()
    res = survey(CorpusConfig(seed=args.seed), args.grid)
    with open(args.out, "w") as fh:
        json.dump(res, fh, indent=1)
    print(f"{len(res['diagrams'])} diagrams")
    for k, v in res["counts"].items():
        print(f"  {k}: {v}")
    print(f"  worst min contact: {res['worst_min_contact']}")


if __name__ == "__main__":
    main()

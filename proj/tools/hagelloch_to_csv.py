#!/usr/bin/env python3
"""Convert the Hagelloch measles line-list to the id,x,y,onset layout read by taustat.

The usual source is the ``hagelloch.df`` data frame from the R package ``surveillance``,
exported with ``write.csv(hagelloch.df, "hagelloch.csv", row.names = FALSE)``.

Column mapping (override with the flags below):

    id     <- PN      patient number
    x      <- x.loc   planar coordinate, metres
    y      <- y.loc   planar coordinate, metres
    onset  <- tPRO    days from the start of the outbreak to prodromal symptoms

If the onset column holds calendar dates (e.g. PRO as 1861-11-21), they are converted to
whole days after the earliest date.
"""

import argparse
import csv
import datetime as dt
import sys


def parse_onset(text):
    try:
        return float(text)
    except ValueError:
        return dt.date.fromisoformat(text.strip())


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("input", help="CSV export of hagelloch.df")
    ap.add_argument("output", help="destination CSV (id,x,y,onset)")
    ap.add_argument("--id", default="PN")
    ap.add_argument("--x", default="x.loc")
    ap.add_argument("--y", default="y.loc")
    ap.add_argument("--onset", default="tPRO")
    ap.add_argument("--expect", type=int, default=188, help="expected case count; 0 disables the check")
    args = ap.parse_args(argv)

    with open(args.input, newline="", encoding="utf-8-sig") as f:
        reader = csv.DictReader(f)
        missing = [c for c in (args.id, args.x, args.y, args.onset) if c not in (reader.fieldnames or [])]
        if missing:
            sys.exit(f"input lacks column(s): {', '.join(missing)}")
        rows = []
        for line, rec in enumerate(reader, start=2):
            values = [rec[args.id], rec[args.x], rec[args.y], rec[args.onset]]
            if any(v is None or v.strip() in ("", "NA") for v in values):
                sys.exit(f"line {line}: missing value in {values}")
            rows.append((values[0].strip(), float(values[1]), float(values[2]), parse_onset(values[3])))

    if rows and isinstance(rows[0][3], dt.date):
        start = min(r[3] for r in rows)
        rows = [(i, x, y, float((t - start).days)) for i, x, y, t in rows]

    if args.expect and len(rows) != args.expect:
        sys.exit(f"expected {args.expect} cases, found {len(rows)}")

    with open(args.output, "w", newline="", encoding="utf-8") as f:
        out = csv.writer(f, lineterminator="\n")
        out.writerow(["id", "x", "y", "onset"])
        for i, x, y, t in rows:
            out.writerow([i, repr(x), repr(y), repr(t)])
    print(f"wrote {len(rows)} cases to {args.output}")


if __name__ == "__main__":
    main()

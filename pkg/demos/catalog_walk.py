"""Re-verify a slice of the curve catalog and time the degree searches.

Every catalog entry stores enough invariants to be rebuilt from scratch;
`catalog_verify` redoes the interpolation, self-intersection, canonical
degree and Cox-degree computations and compares them field by field.
"""

import time

from tricurves.cli import catalog_verify, load_catalog

SAMPLE = [
    "it_3_1_1",
    "rt_4_2_1",
    "special_4",
    "new_nonspecial_4",
    "table2_m4",
    "table2_m7",
    "table2_m12",
]


def main() -> None:
    entries = {e.id: e for e in load_catalog()}
    print(f"catalog: {len(entries)} entries, families "
          f"{sorted({e.family for e in entries.values()})}")
    for eid in SAMPLE:
        start = time.monotonic()
        report = catalog_verify(entries[eid])
        elapsed = time.monotonic() - start
        status = "PASS" if report.passed else "FAIL"
        print(f"{status} {eid} ({elapsed:.1f}s)")
        for check in report.checks:
            mark = "ok" if check.ok else "MISMATCH"
            print(f"    {check.field}: {mark} ({check.detail})")


if __name__ == "__main__":
    main()

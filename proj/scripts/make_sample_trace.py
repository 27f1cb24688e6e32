#!/usr/bin/env python3
"""Regenerates data/uk_regional_sample.csv.

Synthetic regional carbon-intensity series in the National Grid ESO regional
CSV layout: one row per (timestamp, region) at a strict 30-minute cadence,
intensities in gCO2/kWh. Five regions with distinct baseline intensities,
diurnal and weekly cycles, and seeded AR(1) noise. Deterministic: rerunning
this script reproduces the committed file byte for byte.
"""

import math
import random
from datetime import datetime, timedelta, timezone
from pathlib import Path

SLOTS = 1536  # 32 days of 30-minute slots
START = datetime(2023, 1, 2, 0, 0, 0, tzinfo=timezone.utc)  # a Monday

# (region_id, baseline g/kWh, diurnal amplitude, noise scale)
REGIONS = [
    ("R1", 132.0, 34.0, 9.0),
    ("R2", 151.0, 40.0, 11.0),
    ("R3", 176.0, 46.0, 12.0),
    ("R4", 208.0, 52.0, 14.0),
    ("R5", 284.0, 58.0, 16.0),
]


def main() -> None:
    rng = random.Random(20230102)
    ar = {rid: 0.0 for rid, *_ in REGIONS}
    out = Path(__file__).resolve().parent.parent / "data" / "uk_regional_sample.csv"
    lines = ["timestamp,region_id,intensity_g_per_kwh"]
    for slot in range(SLOTS):
        ts = START + timedelta(minutes=30 * slot)
        stamp = ts.strftime("%Y-%m-%dT%H:%M:%SZ")
        half_hours = slot % 48
        weekday = ((slot // 48) % 7) < 5
        week_factor = 1.0 if weekday else 0.88
        for rid, base, amp, noise in REGIONS:
            # evening peak around 18:00, trough in the small hours
            diurnal = amp * math.sin(2.0 * math.pi * (half_hours - 26) / 48.0)
            ar[rid] = 0.82 * ar[rid] + rng.gauss(0.0, noise)
            value = base * week_factor + diurnal + ar[rid]
            value = max(value, 16.0)
            lines.append(f"{stamp},{rid},{value:.3f}")
    out.write_text("\n".join(lines) + "\n")
    print(f"wrote {out} ({SLOTS} slots x {len(REGIONS)} regions)")


if __name__ == "__main__":
    main()

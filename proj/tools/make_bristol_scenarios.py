#!/usr/bin/env python3
"""Regenerates the bundled Bristol-analogue scenarios under scenarios/.

Synthetic data: 88 arrivals and 86 departures between 06:00 and 22:55,
a two-tier grid tariff and bell-shaped PV output for a sunny summer and
winter day. Output is deterministic.
"""

import json
import math
import random
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent / "scenarios"
STAGES = 288
STAGE_MIN = 5

# Flights per hour 06..22; shaped like a regional airport day with a
# morning departure bank, a midday lull and an evening arrival bank.
ARRIVALS_PER_HOUR = [2, 3, 5, 6, 5, 4, 5, 6, 6, 5, 5, 6, 7, 7, 6, 5, 5]
DEPARTURES_PER_HOUR = [9, 8, 6, 5, 4, 4, 5, 5, 6, 5, 5, 6, 6, 5, 4, 2, 1]

SUMMER_PV = {"sunrise": 5.0, "sunset": 21.0, "peak_kw": 42.0}
WINTER_PV = {"sunrise": 8.0, "sunset": 16.0, "peak_kw": 40.0}

TARIFF = [("00:00", "07:00", 0.07), ("07:00", "24:00", 0.15)]


def hhmm(minutes):
    return f"{minutes // 60:02d}:{minutes % 60:02d}"


def schedule(seed=20240601):
    rng = random.Random(seed)
    rows = []
    for kind, per_hour, prefix in (
        ("arrival", ARRIVALS_PER_HOUR, "A"),
        ("departure", DEPARTURES_PER_HOUR, "D"),
    ):
        n = 0
        for h, count in enumerate(per_hour):
            hour = 6 + h
            slots = rng.sample(range(12), count)
            for s in sorted(slots):
                n += 1
                rows.append((hour * 60 + s * STAGE_MIN, f"{prefix}{n:03d}", kind))
    assert sum(ARRIVALS_PER_HOUR) == 88 and sum(DEPARTURES_PER_HOUR) == 86
    # Pin the first and last flight of the day.
    rows.sort()
    first = rows[0]
    rows[0] = (6 * 60, first[1], first[2])
    last = rows[-1]
    rows[-1] = (22 * 60 + 55, last[1], last[2])
    rows.sort()
    return rows


def pv_profile(sunrise, sunset, peak_kw):
    values = []
    for k in range(STAGES):
        t = (k + 0.5) * STAGE_MIN / 60.0
        if sunrise < t < sunset:
            x = (t - sunrise) / (sunset - sunrise)
            values.append(peak_kw * math.sin(math.pi * x) ** 2)
        else:
            values.append(0.0)
    return values


def write_stage_values(path, values):
    with open(path, "w") as f:
        f.write("stage,value\n")
        for k, v in enumerate(values):
            f.write(f"{k},{v:.4f}\n")


def scenario_doc(description, pv_file, events=None):
    doc = {
        "description": description,
        "fleet": {
            "n_ev": 25,
            "capacity_kwh": 50,
            "soc_min": 0.2,
            "soc_max": 0.8,
            "charge_power_kw": 22,
            "efficiency": 0.9,
            "e_work_kwh_per_stage": 2.0,
            "d_thre": 1,
            "horizon": STAGES,
            "stage_minutes": STAGE_MIN,
            "cycles_to_failure": 3000,
        },
        "initial_soc": 0.8,
        "prices": {"renewable_price": 0.04, "tiers_file": "../common/tariff.csv"},
        "renewable": {"file": pv_file},
        "degradation": {"a0": 200, "a1": 400},
        "workload": {"mu_min": 22.5, "sigma_min": 5, "lower_min": 15, "upper_min": 30},
        "schedule": "../common/schedule.csv",
        "events": events or [],
        "seed": 7,
        "rollout": {"workload_mode": "certainty-equivalent", "parallel": True},
        "policies": ["greedy", "renewable", "rollout"],
    }
    return doc


def main():
    common = ROOT / "common"
    common.mkdir(parents=True, exist_ok=True)
    rows = schedule()
    with open(common / "schedule.csv", "w") as f:
        f.write("flight_id,kind,time_hhmm\n")
        for minutes, fid, kind in rows:
            f.write(f"{fid},{kind},{hhmm(minutes)}\n")
    with open(common / "tariff.csv", "w") as f:
        f.write("start_hhmm,end_hhmm,price\n")
        for start, end, price in TARIFF:
            f.write(f"{start},{end},{price}\n")
    write_stage_values(common / "pv_summer.csv", pv_profile(**SUMMER_PV))
    write_stage_values(common / "pv_winter.csv", pv_profile(**WINTER_PV))

    # The cancelled flight is the arrival closest to 10:45, announced 1 h ahead.
    arrivals = [(abs(m - (10 * 60 + 45)), m, fid) for m, fid, k in rows if k == "arrival"]
    _, cancel_minutes, cancel_id = min(arrivals)

    scenarios = {
        "bristol_summer": scenario_doc("Sunny summer day", "../common/pv_summer.csv"),
        "bristol_winter": scenario_doc("Sunny winter day", "../common/pv_winter.csv"),
        "bristol_cancel": scenario_doc(
            f"Summer day, arrival {cancel_id} at {hhmm(cancel_minutes)} cancelled",
            "../common/pv_summer.csv",
            [{"kind": "cancellation", "flight_id": cancel_id,
              "announce_hhmm": hhmm(cancel_minutes - 60)}],
        ),
    }
    for name, doc in scenarios.items():
        d = ROOT / name
        d.mkdir(parents=True, exist_ok=True)
        with open(d / "scenario.json", "w") as f:
            json.dump(doc, f, indent=2)
            f.write("\n")


if __name__ == "__main__":
    main()

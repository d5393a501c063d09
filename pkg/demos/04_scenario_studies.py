"""Faulty-module scenarios: one, two, or three bad modules per triple.

The three canonical scenarios behave very differently: a single faulty
module is masked perfectly (and always flagged), two faulty modules err
only on coincidences, and three faulty modules additionally hide the
unanimous-wrong case from the alarm.
"""

from htmr_lab import SweepConfig, scenario_suite

DESCRIPTIONS = {
    "NNF": "one faulty module  - masked perfectly, every slip flagged",
    "NFF": "two faulty modules - errs only when both slip at once",
    "FFF": "all faulty         - full two-of-three behaviour",
}


def main() -> None:
    cfg = SweepConfig(
        pf_min=0.1, pf_max=0.5, pf_steps=3,
        orders=(1, 2), trials=200_000, seed=7,
    )
    suite = scenario_suite(cfg)

    for pattern in ("NNF", "NFF", "FFF"):
        print(f"\nScenario {pattern}: {DESCRIPTIONS[pattern]}")
        print("=" * 72)
        print(f"{'pf':>5} {'order':>5} {'analytic':>12} {'empirical':>12} {'errors':>8}")
        print("-" * 72)
        for row in suite[pattern]:
            errors = round(row.pe_hat * row.trials)
            print(
                f"{row.pf:>5.1f} {row.order:>5} {row.pe:>12.6g} "
                f"{row.pe_hat:>12.6g} {errors:>8}"
            )

    print("\nNote the NNF rows: zero errors out of 200,000 trials at every")
    print("rate and both depths. The voter does not just reduce single-fault")
    print("errors, it eliminates them structurally.")


if __name__ == "__main__":
    main()

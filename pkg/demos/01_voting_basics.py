"""Voting basics: the fault-masking truth table and the TMR flip-flop.

Walks the 8-row voter/alarm table, then clocks a few triples through a
TMR flip-flop to show how the register follows the vote while the alarm
flags every disagreement -- except the unanimous-wrong one.
"""

from htmr_lab import TmrRegister, enumerate_truth_table, flipflop_step


def main() -> None:
    print("Fault-masking block truth table")
    print("=" * 40)
    print(f"{'y1':>3} {'y2':>3} {'y3':>3} | {'vote':>4} {'alarm':>5}")
    print("-" * 40)
    for triple, outcome in enumerate_truth_table():
        y1, y2, y3 = triple.as_tuple()
        print(f"{y1:>3} {y2:>3} {y3:>3} | {outcome.value:>4} {outcome.alarm:>5}")

    print("\nKey rows:")
    print("  (1,0,0) -> vote 0, alarm 1   single wrong bit: outvoted and flagged")
    print("  (1,1,0) -> vote 1, alarm 1   two against one: majority wins, flagged")
    print("  (1,1,1) -> vote 1, alarm 0   unanimous: silent, even if all are wrong")

    print("\nClocking a TMR flip-flop")
    print("=" * 40)
    reg = TmrRegister()
    print(f"reset: stored={reg.stored} loaded={reg.loaded}")
    for step, bits in enumerate([(1, 1, 0), (0, 0, 0), (0, 1, 0), (1, 1, 1)], start=1):
        reg, outcome = flipflop_step(reg, bits)
        print(
            f"edge {step}: inputs={bits} -> vote={outcome.value} "
            f"alarm={outcome.alarm} register now stores {reg.stored}"
        )


if __name__ == "__main__":
    main()

LINES = []


def record(criterion: str, ok: bool, detail: str = ""):
    line = f"{'PASS' if ok else 'FAIL'}  {criterion}"
    if detail:
        line += f"  ({detail})"
    LINES.append(line)
    print(line)
    return ok

"""Write the group catalogs used by the findgroup regressions."""

import math
import pathlib

DATA = pathlib.Path(__file__).resolve().parent.parent / "tests" / "data"

ORDER60 = [
    ("C5 x Dic3", "SemiDirect(C(15),C(4),11)"),
    ("C3 x Dic5", "SemiDirect(C(15),C(4),4)"),
    ("Dic15", "SemiDirect(C(15),C(4),14)"),
    ("C60", "C(60)"),
    ("A5", "A(5)"),
    ("C3 x F20", "SemiDirect(C(15),C(4),7)"),
    ("C15 : C4", "SemiDirect(C(15),C(4),2)"),
    ("S3 x D5", "Direct(D(3),D(5))"),
    ("C5 x A4", "Direct(C(5),A(4))"),
    ("C6 x D5", "SemiDirect(C(30),C(2),19)"),
    ("C10 x S3", "SemiDirect(C(30),C(2),11)"),
    ("D30", "D(30)"),
    ("C2 x C30", "Direct(C(2),C(30))"),
]


def cycles(perm):
    seen, out = set(), []
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            continue
        cyc, x = [], start
        while x not in seen:
            seen.add(x)
            cyc.append(x + 1)
            x = perm[x]
        out.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(out)


def affine_c5_squared_c3():
    # F_5^2 with translations and a linear map of order 3.
    pt = lambda x, y: 5 * (x % 5) + (y % 5)
    t1 = [pt(x + 1, y) for x in range(5) for y in range(5)]
    t2 = [pt(x, y + 1) for x in range(5) for y in range(5)]
    a = [pt(-y, x - y) for x in range(5) for y in range(5)]
    return ", ".join(cycles(p) for p in (t1, t2, a))


def square_free(n):
    out = []
    for m in range(1, n + 1):
        if n % m:
            continue
        k = n // m
        if math.gcd(m, k) != 1:
            continue
        if m == 1:
            out.append((f"C{n}", f"C({n})"))
            continue
        classes = set()
        for r in range(1, m):
            if pow(r, k, m) != 1 or math.gcd(r - 1, m) != 1:
                continue
            classes.add(min(pow(r, s, m) for s in range(1, k) if math.gcd(s, k) == 1))
        for r in sorted(classes):
            out.append((f"C{m} : C{k} (k={r})", f"SemiDirect(C({m}),C({k}),{r})"))
    return out


def write(name, rows, header):
    lines = [f"# {header}"] + [f"{a} = {b}" for a, b in rows]
    (DATA / name).write_text("\n".join(lines) + "\n")


if __name__ == "__main__":
    write("groups60.txt", ORDER60, "all 13 groups of order 60")
    write("groups75.txt", [("C75", "C(75)"), ("C5 x C15", "Direct(C(5),C(15))"),
                           ("(C5 x C5) : C3", affine_c5_squared_c3())], "all 3 groups of order 75")
    write("groups903.txt", square_free(903), "all groups of order 903 = 3 * 7 * 43")

"""Trace form, entropic discriminant and SOS certificate for a space in Gr(2, 4).

    python scripts/entropic_example.py [--input data/example65.json]
"""

import argparse
from pathlib import Path

from recipchow.entropic import monomial_label, mult_matrices, sos_certificate, trace_form_disc
from recipchow.jsonio import load_space, matrix_json

DEFAULT = Path(__file__).resolve().parents[1] / "data" / "example65.json"


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--input", default=str(DEFAULT))
    args = ap.parse_args()
    L, perp = load_space(args.input)
    mm = mult_matrices(L, perp)
    tf = trace_form_disc(L, mm=mm)
    print("G =", matrix_json(mm.gram))
    print("basis:", ", ".join(monomial_label(a, L.d) for a in tf.basis))
    for row in tf.H:
        print("  ", " | ".join(str(e) for e in row))
    print("det(H) =", tf.det_raw)
    print("normalized:", tf.det_normalized)
    cert = sos_certificate(L, mm=mm, tf=tf)
    print(f"SOS ({cert.mode}, {len(cert.squares)} squares)")
    if cert.mode == "exact":
        print("  sum of squares == det(H):", cert.sum_of_squares() == tf.det_raw)
    else:
        print(f"  residual {cert.residual:.2e}")


if __name__ == "__main__":
    main()

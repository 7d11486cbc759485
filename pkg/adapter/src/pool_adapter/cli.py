"""Command-line front end for the scikit-learn pool adapter."""

from __future__ import annotations

import argparse
import sys

from .adapter import AdapterConfig, AdapterError, run_pool


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="pool-adapter",
        description="Train the scikit-learn classifier pool and emit a response-matrix CSV.",
    )
    parser.add_argument("dataset", help="local CSV path or 'openml:<data id>'")
    parser.add_argument("--label-col", default="label")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--train-frac", type=float, default=0.7)
    parser.add_argument("--out-dir", default=".")
    parser.add_argument("--no-svm", action="store_true")
    parser.add_argument("--no-mlp", action="store_true")
    parser.add_argument(
        "--duplicate-forests",
        action="store_true",
        help="also train the 3/5/default-tree forests listed separately in the source pool",
    )
    parser.add_argument(
        "--cv10",
        action="store_true",
        help="record 10-fold cross-validation accuracies in the sidecar",
    )
    args = parser.parse_args(argv)
    config = AdapterConfig(
        dataset=args.dataset,
        seed=args.seed,
        label_col=args.label_col,
        train_fraction=args.train_frac,
        include_svm=not args.no_svm,
        include_mlp=not args.no_mlp,
        include_duplicate_forests=args.duplicate_forests,
        cv10=args.cv10,
    )
    try:
        sidecar = run_pool(config, args.out_dir)
    except (AdapterError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(
        f"wrote {sidecar['respondents']} respondents "
        f"({sidecar['real_members']} real) to {args.out_dir}"
    )
    return 0


if __name__ == "__main__":
    sys.exit(main())

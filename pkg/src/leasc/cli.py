"""Command-line interface.

Subcommands: gen, fit, encode, cluster, eval, coverage, check-contraction,
pipeline. Every subcommand accepts --config pointing at a plain-text
``key = value`` file whose keys mirror the flag names; explicit flags override
file values. Exit codes: 0 success, 1 usage error, 2 I/O error, 3 numeric error.
"""

import argparse
import os
import sys

import numpy as np

from . import contraction
from . import encoder as enc
from . import io as lio
from . import metrics as met
from . import pipeline as pipe
from . import rpcm
from . import sampling
from . import spectral
from . import synth
from .exceptions import (ConfigError, DegenerateInputError, FormatError,
                         InvalidInputError, NumericError)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _parse_sizes(text):
    try:
        return [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise UsageError("expected a comma-separated list of integers, got %r" % text)


def _load_config_file(path):
    values = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError("config line %d is not 'key = value'" % lineno)
            key, value = (part.strip() for part in line.split("=", 1))
            values[key.replace("-", "_")] = value
    return values


def _add_rpcm_flags(p):
    p.add_argument("--variant", choices=sorted(rpcm.VARIANTS), default="f2")
    p.add_argument("--alpha-bar", type=float, default=1.0)
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--beta", type=float, default=0.1)
    p.add_argument("--gamma", type=float, default=1.0)
    p.add_argument("--max-outer", type=int, default=300)
    p.add_argument("--eps1", type=float, default=1e-2)
    p.add_argument("--eps2", type=float, default=1e-4)
    p.add_argument("--train-schedule", choices=("TrainLast", "PerIteration"),
                   default="TrainLast")
    p.add_argument("--hidden", type=str, default="1500",
                   help="comma-separated hidden layer sizes")
    p.add_argument("--lr", type=float, default=1e-4)
    p.add_argument("--epochs", type=int, default=5)
    p.add_argument("--init-scale", type=float, default=0.01)
    p.add_argument("--activation", choices=("relu", "tanh", "sigmoid"),
                   default="relu")
    p.add_argument("--output-activation", choices=("identity", "relu"),
                   default="identity")


def _rpcm_config(args):
    encoder_cfg = enc.EncoderConfig(
        hidden_sizes=_parse_sizes(args.hidden), learning_rate=args.lr,
        max_epochs=args.epochs, init_scale=args.init_scale, seed=args.seed,
        hidden_activation=args.activation,
        output_activation=args.output_activation)
    return rpcm.RpcmConfig(
        variant=args.variant, alpha_bar=args.alpha_bar, alpha=args.alpha,
        beta=args.beta, gamma=args.gamma, max_outer=args.max_outer,
        eps1=args.eps1, eps2=args.eps2, train_schedule=args.train_schedule,
        encoder=encoder_cfg)


def _build_parser():
    parser = _Parser(prog="leasc",
                     description="Learnable subspace clustering pipeline")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.add_argument("--config", type=str, default=None,
                       help="key = value file; flags override")
        return p

    p = add("gen", help="generate a synthetic union-of-subspaces dataset")
    p.add_argument("--out", required=True)
    p.add_argument("--labels-out", default=None)
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--subspaces", type=int, default=4)
    p.add_argument("--dims", type=str, default=None,
                   help="comma-separated subspace dimensions")
    p.add_argument("--points", type=int, default=200)
    p.add_argument("--noise", type=float, default=0.02)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--replica", action="store_true",
                   help="four evenly spaced planar lines, 200 points each")

    p = add("fit", help="solve RPCM on a matrix and save the encoder")
    p.add_argument("--data", required=True)
    p.add_argument("--out-dir", required=True)
    p.add_argument("--seed", type=int, default=0)
    _add_rpcm_flags(p)

    p = add("encode", help="apply a saved encoder to a matrix")
    p.add_argument("--data", required=True)
    p.add_argument("--encoder", required=True, help="encoder manifest path")
    p.add_argument("--out", required=True)

    p = add("cluster", help="spectral clustering of a code matrix")
    p.add_argument("--codes", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int, default=0)

    p = add("eval", help="ACC/NMI of a predicted labels file vs ground truth")
    p.add_argument("pred")
    p.add_argument("truth")

    p = add("coverage", help="probability a random sample covers every subspace")
    p.add_argument("--sizes", required=True,
                   help="comma-separated per-subspace point counts")
    p.add_argument("--n", type=int, required=True)

    p = add("check-contraction", help="per-pair contraction bound report (CSV)")
    p.add_argument("--data", required=True)
    p.add_argument("--encoder", required=True)
    p.add_argument("--n-reps", type=int, required=True)
    p.add_argument("--selection", choices=("random", "kmeans"), default="kmeans")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None, help="CSV path (default: stdout)")

    p = add("pipeline", help="full select/fit/encode/cluster run")
    p.add_argument("--data", required=True)
    p.add_argument("--labels", default=None, help="ground-truth labels file")
    p.add_argument("--out-dir", required=True)
    p.add_argument("--reps", type=int, default=88)
    p.add_argument("--selection", choices=("random", "kmeans"), default="kmeans")
    p.add_argument("--k", type=int, default=4)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--emit-timings", action="store_true")
    _add_rpcm_flags(p)

    return parser


def _cmd_gen(args):
    if args.replica:
        data = synth.four_lines_dataset(seed=args.seed, noise_sigma=args.noise,
                                        points_per_subspace=args.points)
    else:
        dims = (_parse_sizes(args.dims) if args.dims
                else [1] * args.subspaces)
        config = synth.SynthConfig(ambient_dim=args.d,
                                   num_subspaces=args.subspaces,
                                   subspace_dims=dims,
                                   points_per_subspace=args.points,
                                   noise_sigma=args.noise, seed=args.seed)
        data = synth.generate(config)
    lio.write_matrix(args.out, data.Y)
    if args.labels_out:
        lio.write_labels(args.labels_out, data.labels)
    print("wrote %d points of dimension %d to %s"
          % (data.Y.shape[1], data.Y.shape[0], args.out))


def _cmd_fit(args):
    X = lio.read_matrix(args.data)
    result = rpcm.rpcm_fit(X, _rpcm_config(args))
    os.makedirs(args.out_dir, exist_ok=True)
    manifest = lio.save_encoder(args.out_dir, result.params)
    lio.write_matrix(os.path.join(args.out_dir, "codes.lscm"), result.Z)
    lio.write_matrix(os.path.join(args.out_dir, "noise.lscm"), result.E)
    print("converged=%s iterations=%d final_residual=%.3e manifest=%s"
          % (result.converged, result.iterations,
             result.residual_history[-1], manifest))


def _cmd_encode(args):
    Y = lio.read_matrix(args.data)
    params = lio.load_encoder(args.encoder)
    lio.write_matrix(args.out, enc.forward(Y, params))
    print("encoded %d points -> %s" % (Y.shape[1], args.out))


def _cmd_cluster(args):
    codes = lio.read_matrix(args.codes)
    labels = spectral.cluster_embedding(codes, args.k, seed=args.seed)
    lio.write_labels(args.out, labels)
    print("wrote %d labels to %s" % (len(labels), args.out))


def _cmd_eval(args):
    pred = lio.read_labels(args.pred)
    truth = lio.read_labels(args.truth)
    report = met.evaluate(pred, truth)
    print("ACC %.4f" % report.acc)
    print("NMI %.4f" % report.nmi)


def _cmd_coverage(args):
    sizes = sampling.SubspaceSizes(_parse_sizes(args.sizes))
    print("%.4f" % sampling.coverage_probability(sizes, args.n))


def _cmd_check_contraction(args):
    Y = lio.read_matrix(args.data)
    params = lio.load_encoder(args.encoder)
    if args.selection == "random":
        reps = sampling.select_random(Y, args.n_reps, seed=args.seed)
    else:
        reps = sampling.select_kmeans(Y, args.n_reps, seed=args.seed)
    report = contraction.check_contraction(Y, reps, params)
    lines = ["pair,lhs,bound,slack"]
    lines += ["%d,%.12g,%.12g,%.12g" % (r.point_index, r.lhs, r.bound, r.slack)
              for r in report.records]
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    print("rho %.6g satisfied %.4f" % (report.rho, report.fraction_satisfied),
          file=sys.stderr)


def _cmd_pipeline(args):
    Y = lio.read_matrix(args.data)
    truth = lio.read_labels(args.labels) if args.labels else None
    config = pipe.PipelineConfig(n_representatives=args.reps,
                                 selection=args.selection, n_clusters=args.k,
                                 seed=args.seed, rpcm=_rpcm_config(args))
    result = pipe.run_pipeline(Y, config, truth=truth)
    os.makedirs(args.out_dir, exist_ok=True)
    lio.write_labels(os.path.join(args.out_dir, "labels.txt"), result.labels)
    lio.save_encoder(args.out_dir, result.fit.params)
    if args.emit_timings:
        rows = "\n".join("%s,%.6f" % (phase, result.timings[phase])
                         for phase in pipe.PHASES)
        with open(os.path.join(args.out_dir, "timings.csv"), "w") as fh:
            fh.write(rows + "\n")
    if result.report is not None:
        print("ACC %.4f" % result.report.acc)
        print("NMI %.4f" % result.report.nmi)
    print("labels -> %s" % os.path.join(args.out_dir, "labels.txt"))


_COMMANDS = {
    "gen": _cmd_gen,
    "fit": _cmd_fit,
    "encode": _cmd_encode,
    "cluster": _cmd_cluster,
    "eval": _cmd_eval,
    "coverage": _cmd_coverage,
    "check-contraction": _cmd_check_contraction,
    "pipeline": _cmd_pipeline,
}


def _peek_config(argv):
    """Find the subcommand and --config value without a full parse."""
    command = next((tok for tok in argv if not tok.startswith("-")), None)
    for i, tok in enumerate(argv):
        if tok == "--config":
            if i + 1 >= len(argv):
                raise UsageError("--config expects a path")
            return command, argv[i + 1]
        if tok.startswith("--config="):
            return command, tok.split("=", 1)[1]
    return command, None


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = _build_parser()
    try:
        command, config_path = _peek_config(argv)
        if config_path is not None and command in _COMMANDS:
            # apply file values as defaults before parsing so explicit flags
            # keep precedence and required flags may come from the file
            file_values = _load_config_file(config_path)
            subparser = parser._subparsers._group_actions[0].choices[command]
            known = {a.dest for a in subparser._actions}
            unknown = set(file_values) - known
            if unknown:
                raise UsageError("unknown config keys: %s" % ", ".join(sorted(unknown)))
            defaults = {}
            for action in subparser._actions:
                if action.dest in file_values:
                    raw = file_values[action.dest]
                    if action.type is not None:
                        raw = action.type(raw)
                    elif isinstance(action.const, bool) or isinstance(
                            action.default, bool):
                        raw = raw.lower() in ("1", "true", "yes", "on")
                    defaults[action.dest] = raw
                    action.required = False
            subparser.set_defaults(**defaults)
        args = parser.parse_args(argv)
        _COMMANDS[args.command](args)
        return 0
    except UsageError as err:
        print("usage error: %s" % err, file=sys.stderr)
        return 1
    except (ConfigError, InvalidInputError) as err:
        print("invalid input: %s" % err, file=sys.stderr)
        return 1
    except (FormatError, OSError) as err:
        print("i/o error: %s" % err, file=sys.stderr)
        return 2
    except (NumericError, DegenerateInputError) as err:
        print("numeric error: %s" % err, file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())

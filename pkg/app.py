"""
Simon Congruence Toolkit - command-line front end

    python app.py maxk [--distinguish] S T
    python app.py check -k K S T
    python app.py tree W
    python app.py blocks -k K W
    python app.py bench [--sizes 1000,10000] [--mode near|uniform]

Words come from the arguments, from --file (one word per line) or from stdin.
Results go to stdout, diagnostics to stderr.
"""
import argparse
import json
import logging
import sys

from config import APP_NAME, APP_VERSION, BENCH_CONFIG, CLI_CONFIG, EXIT_CODES, LOG_CONFIG
from services.bench_service import export_results, run_bench, scaling_ratio, summarize, within_budget
from services.corpus import CORPUS_MODES, CorpusError
from services.maxsimk import compare
from services.simon_tree import EmptyWordError, build_simon_tree, export_dot, k_blocks, segment_text
from services.word_model import TOKEN_MODES, WordModelError, normalize, tokenize

logger = logging.getLogger("simon")


class CliInputError(Exception):
    """Raised when the words to compare cannot be read"""


def configure_logging(level):
    logging.basicConfig(level=level, format=LOG_CONFIG['format'], stream=sys.stderr)


def read_words(args, count):
    """Exactly `count` raw words from the positional arguments, --file or stdin"""
    if args.words:
        if len(args.words) != count:
            raise CliInputError(f"Expected {count} word(s), got {len(args.words)}")
        return list(args.words)

    try:
        if args.file:
            with open(args.file, 'r', encoding='utf-8') as f:
                lines = f.read().splitlines()
        else:
            lines = sys.stdin.read().splitlines()
    except OSError as e:
        raise CliInputError(f"Cannot read input: {e}") from e

    if len(lines) < count:
        raise CliInputError(f"Expected {count} line(s) of input, got {len(lines)}")
    return lines[:count]


def emit(args, plain_lines, record):
    if args.format == 'json':
        print(json.dumps(record, ensure_ascii=False))
    else:
        for line in plain_lines:
            print(line)


def cmd_maxk(args):
    raw_s, raw_t = read_words(args, 2)
    report = compare(raw_s, raw_t, args.mode)
    sep = ' ' if args.mode == 'tokens' else ''
    lines = [f"k={report.k_text}"]
    if args.distinguish and report.distinguisher is not None:
        word = sep.join(str(token) for token in report.distinguisher)
        lines.append(f"distinguisher={word} (in {report.contained_in})")
    record = report.as_dict()
    if not args.distinguish:
        record.pop('distinguisher')
        record.pop('contained_in')
    emit(args, lines, record)
    return EXIT_CODES['ok']


def cmd_check(args):
    raw_s, raw_t = read_words(args, 2)
    report = compare(raw_s, raw_t, args.mode)
    holds = args.k <= report.k
    emit(args, ["true" if holds else "false"], {"k": args.k, "max_k": report.k_text, "congruent": holds})
    return EXIT_CODES['ok'] if holds else EXIT_CODES['false']


def _single_word(args):
    (raw,) = read_words(args, 1)
    tokens = tokenize(raw, args.mode)
    w, _, alphabet = normalize(tokens, [])
    sep = ' ' if args.mode == 'tokens' else ''
    return w, alphabet, sep


def cmd_tree(args):
    w, alphabet, sep = _single_word(args)
    tree = build_simon_tree(w)
    if args.format == 'json':
        nodes = [
            {
                "id": node.uid,
                "block": [node.start, node.end],
                "depth": node.depth,
                "text": segment_text(w, node.start, node.end, alphabet, sep),
                "children": [child.uid for child in node.left_to_right()],
            }
            for node in tree.nodes()
        ]
        print(json.dumps({"depth": tree.depth, "nodes": nodes}, ensure_ascii=False))
    else:
        sys.stdout.write(export_dot(tree, alphabet, sep))
    return EXIT_CODES['ok']


def cmd_blocks(args):
    w, alphabet, sep = _single_word(args)
    tree = build_simon_tree(w)
    blocks = k_blocks(tree, args.k)
    lines = [f"{block} {segment_text(w, block.start, block.end, alphabet, sep)}" for block in blocks]
    record = {"k": args.k, "blocks": [[block.start, block.end] for block in blocks]}
    emit(args, lines, record)
    return EXIT_CODES['ok']


def cmd_bench(args):
    sizes = None
    if args.sizes:
        try:
            sizes = [int(part) for part in args.sizes.split(',') if part.strip()]
        except ValueError as e:
            raise CorpusError(f"Sizes must be comma-separated integers: {args.sizes}") from e
    df = run_bench(
        sizes=sizes,
        sigma=args.sigma,
        repetitions=args.repetitions,
        seed=args.seed,
        mode=args.mode,
        edits=args.edits,
        jobs=args.jobs,
        tokens=args.tokens,
    )
    summary = summarize(df)
    ratio = scaling_ratio(summary)
    fits = within_budget(summary)
    try:
        written = export_results(df, args.csv, args.xlsx)
    except OSError as e:
        raise CliInputError(f"Cannot write results: {e}") from e
    for path in written:
        logger.info("Wrote %s", path)

    if args.format == 'json':
        print(json.dumps({"summary": summary.to_dict(orient='records'), "ratio": ratio, "within_budget": fits}))
    else:
        print(summary.to_string(index=False))
        print(f"time/n ratio (largest/smallest): {ratio:.2f}")
        mark = "✓" if fits else "✗"
        print(f"{mark} ratio {'within' if fits else 'above'} the budget of {BENCH_CONFIG['max_ratio']:.2f}")
    return EXIT_CODES['ok']


def build_parser():
    parser = argparse.ArgumentParser(prog='app.py', description=f"{APP_NAME}: Simon's congruence for two words")
    parser.add_argument('--version', action='version', version=f"{APP_NAME} {APP_VERSION}")
    parser.add_argument('--log-level', default=LOG_CONFIG['level'], help='logging level for stderr')

    output = argparse.ArgumentParser(add_help=False)
    output.add_argument('--format', choices=['plain', 'json'], default=CLI_CONFIG['format'])

    words = argparse.ArgumentParser(add_help=False)
    words.add_argument('--mode', choices=sorted(TOKEN_MODES), default=CLI_CONFIG['mode'],
                       help='chars: every non-whitespace character; tokens: whitespace-separated tokens')
    words.add_argument('--file', help='read the words from a file, one per line')
    words.add_argument('words', nargs='*')

    sub = parser.add_subparsers(dest='command', required=True)

    maxk = sub.add_parser('maxk', parents=[output, words], help='largest k with s ~k t')
    maxk.add_argument('--distinguish', action='store_true', help='also print a shortest distinguishing word')
    maxk.set_defaults(handler=cmd_maxk)

    check = sub.add_parser('check', parents=[output, words], help='exit 0 iff s ~k t')
    check.add_argument('-k', type=int, required=True)
    check.set_defaults(handler=cmd_check)

    tree = sub.add_parser('tree', parents=[output, words], help='Simon-Tree of a word as DOT')
    tree.set_defaults(handler=cmd_tree)

    blocks = sub.add_parser('blocks', parents=[output, words], help='k-block partition of a word')
    blocks.add_argument('-k', type=int, required=True)
    blocks.set_defaults(handler=cmd_blocks)

    bench = sub.add_parser('bench', parents=[output], help='time the solver on growing random pairs')
    bench.add_argument('--sizes', help='comma-separated word lengths')
    bench.add_argument('--sigma', type=int)
    bench.add_argument('--repetitions', type=int)
    bench.add_argument('--seed', type=int)
    bench.add_argument('--mode', choices=sorted(CORPUS_MODES), default=BENCH_CONFIG['mode'])
    bench.add_argument('--edits', type=int)
    bench.add_argument('--jobs', type=int)
    bench.add_argument('--tokens', action='store_true', help='feed Faker token sequences through tokens mode')
    bench.add_argument('--csv')
    bench.add_argument('--xlsx')
    bench.set_defaults(handler=cmd_bench)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.log_level.upper())

    if getattr(args, 'k', 0) < 0:
        parser.error("k must be non-negative")

    try:
        return args.handler(args)
    except (CliInputError, WordModelError, EmptyWordError) as e:
        print(f"✗ {e}", file=sys.stderr)
        return EXIT_CODES['io']
    except CorpusError as e:
        print(f"✗ {e}", file=sys.stderr)
        return EXIT_CODES['usage']


if __name__ == '__main__':
    sys.exit(main())

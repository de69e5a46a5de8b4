"""
End-to-end tests for the command line.
"""
import numpy as np

from src.cli.main import main
from src.cli.parser import build_parser
from src.constants import (
    MNIST_TEST_IMAGES, MNIST_TEST_LABELS, MNIST_TRAIN_IMAGES, MNIST_TRAIN_LABELS,
)
from src.data.mnist_loader import load_mnist
from src.network.checkpoint import load_checkpoint
from src.training.run_metadata import read_metadata

SYNTH_RUN = ["--data", "synth", "--synth-train", "200", "--synth-test", "50", "--hidden", "8"]


def test_train_smoke(tmp_path, capsys):
    out = tmp_path / "m.csv"
    code = main(["train", "--rule", "vbp", "--steps", "100", "--seed", "7", "--out", str(out),
                 "--eval-every", "25", *SYNTH_RUN])
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0].startswith("step,rule,seed,train_loss,test_loss,test_acc,align_l1,align_l2,wall_ms")
    assert len(lines) == 1 + 5
    assert "rule=vbp" in capsys.readouterr().out

    checkpoint = load_checkpoint(tmp_path / "m.ckpt")
    assert checkpoint.sizes == (784, 8, 10)
    meta = read_metadata(tmp_path / "m.meta.yaml")
    assert meta['config']['train']['seed'] == 7
    assert meta['final']['step'] == 99


def test_unknown_rule_exits_2_listing_rules(capsys):
    assert main(["train", "--rule", "itd-q"]) == 2
    err = capsys.readouterr().err
    for rule in ("vbp", "fba", "itd-y", "itd-dy"):
        assert rule in err


def test_unknown_flag_is_rejected():
    assert main(["train", "--momentum", "0.9"]) == 2


def test_defaults_echo_then_data_error(tmp_path, capsys):
    code = main(["train", "--rule", "itd-y", "--data-dir", str(tmp_path)])
    assert code == 3
    captured = capsys.readouterr()
    echo = captured.out.splitlines()[0]
    for fragment in ("lr=0.001", "batch=50", "hidden=32", "steps=100000"):
        assert fragment in echo
    assert captured.err.startswith("error:")


def test_config_file_feeds_train(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("rule=fba\nsteps=20\neval_every=10\ndata=synth\nsynth_train=100\nsynth_test=20\nhidden=4\n")
    out = tmp_path / "cfg.csv"
    assert main(["train", "--config", str(cfg), "--out", str(out)]) == 0
    assert out.read_text().splitlines()[1].split(",")[1] == "fba"


def test_bad_config_value_exits_2(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("batch=-4\n")
    assert main(["train", "--config", str(cfg)]) == 2


def test_compare_writes_five_reproducible_files(tmp_path):
    args = ["compare", "--steps", "200", "--seed", "11", "--eval-every", "50", *SYNTH_RUN]
    assert main([*args, "--out", str(tmp_path / "a")]) == 0
    assert main([*args, "--out", str(tmp_path / "b"), "--workers", "1"]) == 0
    names = sorted(p.name for p in (tmp_path / "a").iterdir())
    assert len(names) == 5
    for name in names:
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()
    combined = (tmp_path / "a" / "metrics_combined.csv").read_text().splitlines()[1:]
    assert {line.split(",")[1] for line in combined} == {"vbp", "fba", "itd-y", "itd-dy"}

    svg_a, svg_b = tmp_path / "a.svg", tmp_path / "b.svg"
    assert main(["plot", str(tmp_path / "a" / "metrics_combined.csv"), "--out", str(svg_a)]) == 0
    assert main(["plot", str(tmp_path / "b" / "metrics_combined.csv"), "--out", str(svg_b)]) == 0
    assert svg_a.read_bytes() == svg_b.read_bytes()
    assert svg_a.read_text().count("<polyline") == 4


def test_gradcheck_command(capsys):
    assert main(["gradcheck"]) == 0
    line = capsys.readouterr().out.strip()
    assert line.startswith("PASS max_rel_err=")
    assert main(["gradcheck", "--seed", "9"]) == 0
    first = capsys.readouterr().out
    main(["gradcheck", "--seed", "9"])
    assert capsys.readouterr().out == first


def test_gradcheck_coarse_step_is_reported(capsys):
    main(["gradcheck", "--h", "1e-3"])
    assert "max_rel_err=" in capsys.readouterr().out


def test_synth_data_round_trip(tmp_path):
    out = tmp_path / "idx"
    assert main(["synth-data", "--n", "500", "--test-n", "100", "--classes", "10", "--seed", "1",
                 "--out", str(out)]) == 0
    for name in (MNIST_TRAIN_IMAGES, MNIST_TRAIN_LABELS, MNIST_TEST_IMAGES, MNIST_TEST_LABELS):
        assert (out / name).is_file()
    assert (out / MNIST_TRAIN_LABELS).read_bytes()[:4] == b"\x00\x00\x08\x01"
    train, test = load_mnist(str(out))
    assert (train.size, test.size, train.width) == (500, 100, 784)
    assert set(np.unique(train.labels)) == set(range(10))

    again = tmp_path / "again"
    main(["synth-data", "--n", "500", "--test-n", "100", "--classes", "10", "--seed", "1", "--out", str(again)])
    assert (again / MNIST_TRAIN_IMAGES).read_bytes() == (out / MNIST_TRAIN_IMAGES).read_bytes()


def test_synth_data_then_train_on_idx(tmp_path):
    data_dir = tmp_path / "idx"
    main(["synth-data", "--n", "200", "--test-n", "50", "--out", str(data_dir)])
    out = tmp_path / "m.csv"
    assert main(["train", "--data-dir", str(data_dir), "--steps", "30", "--hidden", "8",
                 "--eval-every", "10", "--out", str(out)]) == 0
    assert len(out.read_text().splitlines()) == 1 + 4


def test_synth_data_rejects_too_many_classes(tmp_path):
    assert main(["synth-data", "--classes", "11", "--out", str(tmp_path)]) == 2


def test_synth_data_io_error_exits_3(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("not a directory")
    assert main(["synth-data", "--n", "20", "--test-n", "20", "--out", str(blocker / "sub")]) == 3


def test_plot_errors(tmp_path, capsys):
    header_only = tmp_path / "empty.csv"
    header_only.write_text("step,rule,seed,train_loss,test_loss,test_acc,align_l1,wall_ms\n")
    assert main(["plot", str(header_only), "--out", str(tmp_path / "p.svg")]) == 2

    data = tmp_path / "m.csv"
    data.write_text("step,rule,test_acc\n0,vbp,0.1\n10,vbp,0.5\n")
    assert main(["plot", str(data), "--column", "accuracy", "--out", str(tmp_path / "p.svg")]) == 2
    assert "test_acc" in capsys.readouterr().err
    assert main(["plot", str(tmp_path / "missing.csv"), "--out", str(tmp_path / "p.svg")]) == 3


def test_help_documents_every_flag():
    parser = build_parser()
    subparsers = parser._subparsers._group_actions[0].choices
    for name, sub in subparsers.items():
        text = sub.format_help()
        for action in sub._actions:
            for flag in action.option_strings:
                assert flag in text, f"{name}: {flag} undocumented"
            if action.option_strings and action.dest != 'help':
                assert action.help, f"{name}: {action.dest} has no help"
    train_help = subparsers['train'].format_help()
    for fragment in ("0.001", "50", "32", "100000"):
        assert fragment in train_help


def test_help_exits_cleanly(capsys):
    assert main(["--help"]) == 0
    assert "synth-data" in capsys.readouterr().out

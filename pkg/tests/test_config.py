import argparse
import io

import pytest

from util.errors import DomainError
from util.registry import Registry
from util.slconfig import DictAction, SLConfig
from util.slio import dump_table, sldump, slload


@pytest.fixture
def config_dir(tmp_path):
    (tmp_path / 'base.py').write_text("seed = 42\nbudget_nodes = 100\nsweep = dict(workers=1, print_freq=10)\n")
    (tmp_path / 'child.py').write_text("_base_ = ['base.py']\nseed = 7\nsweep = dict(workers=4)\n")
    return tmp_path


def test_base_inheritance(config_dir):
    cfg = SLConfig.fromfile(str(config_dir / 'child.py'))
    assert cfg.seed == 7
    assert cfg.budget_nodes == 100
    assert cfg.sweep.workers == 4
    assert cfg.sweep.print_freq == 10
    assert '_base_' not in cfg


def test_options_then_flags(config_dir):
    cfg = SLConfig.fromfile(str(config_dir / 'child.py'))
    cfg.merge_from_dict({'seed': 1, 'sweep.print_freq': 50})
    assert cfg.seed == 1
    assert cfg.sweep.print_freq == 50
    assert cfg.sweep.workers == 4

    args = argparse.Namespace(seed=3, budget_nodes=None, config_file='x', options={'seed': 1})
    cfg.merge_args(args)
    assert cfg.seed == 3
    assert cfg.budget_nodes == 100
    assert 'config_file' not in cfg


def test_check_budgets():
    SLConfig({'budget_nodes': 10, 'trials': 1}).check_budgets()
    with pytest.raises(DomainError):
        SLConfig({'budget_nodes': 0}).check_budgets()
    with pytest.raises(DomainError):
        SLConfig({'trials': -5}).check_budgets()


def test_reserved_keys():
    with pytest.raises(KeyError):
        SLConfig({'dump': 1})


def test_dump_and_reload(config_dir, tmp_path):
    cfg = SLConfig.fromfile(str(config_dir / 'child.py'))
    path = tmp_path / 'dumped.py'
    cfg.dump(str(path))
    again = SLConfig.fromfile(str(path))
    assert again.to_dict() == cfg.to_dict()


def test_missing_config_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        SLConfig.fromfile(str(tmp_path / 'nope.py'))


def test_dict_action_parses_values():
    parser = argparse.ArgumentParser()
    parser.add_argument('--options', nargs='+', action=DictAction)
    args = parser.parse_args(['--options', 'a=1', 'b=0.5', 'c=true', 'd=none', 'e=1,2,3', 'f=K4'])
    assert args.options == {'a': 1, 'b': 0.5, 'c': True, 'd': None, 'e': [1, 2, 3], 'f': 'K4'}


def test_json_dump_is_stable(tmp_path):
    text = sldump({'b': 1, 'a': [1, 2]}, file_format='json')
    assert text == '{\n  "a": [\n    1,\n    2\n  ],\n  "b": 1\n}\n'
    sldump({'x': 1}, str(tmp_path / 'x.json'))
    assert slload(str(tmp_path / 'x.json')) == {'x': 1}
    sldump({'y': [1, 2]}, str(tmp_path / 'y.yaml'))
    assert slload(str(tmp_path / 'y.yaml')) == {'y': [1, 2]}
    with pytest.raises(TypeError):
        slload(str(tmp_path / 'x.txt'))


def test_dump_table():
    text = dump_table([{'n': 5, 'm': 0}, {'n': 5, 'm': 1}], ('n', 'm'))
    assert text == 'n,m\n5,0\n5,1\n'
    buf = io.StringIO()
    dump_table([], ('n', 'm'), file=buf)
    assert buf.getvalue() == 'n,m\n'


def test_registry():
    reg = Registry('things')

    @reg.registe_with_name(module_name='one')
    def build_one():
        return 1

    assert 'one' in reg and reg.get('one')() == 1
    assert reg.get('two') is None
    with pytest.raises(KeyError):
        reg.register(build_one, module_name='one')
    with pytest.raises(TypeError):
        reg.register(42)

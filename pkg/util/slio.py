# ==========================================================
# Modified from mmcv
# ==========================================================
"""
Report and fixture IO.

Reports must be byte-identical across reruns, so every JSON dump goes
through `sldump` with sorted keys and a fixed indent, and ends with a
newline. Tables go out as CSV through pandas.
"""
import json
from abc import ABCMeta, abstractmethod
from pathlib import Path

import pandas as pd
import yaml
try:
    from yaml import CSafeLoader as Loader, CSafeDumper as Dumper
except ImportError:
    from yaml import SafeLoader as Loader, SafeDumper as Dumper


class BaseFileHandler(metaclass=ABCMeta):

    @abstractmethod
    def load_from_fileobj(self, file, **kwargs):
        pass

    @abstractmethod
    def dump_to_str(self, obj, **kwargs):
        pass

    def dump_to_fileobj(self, obj, file, **kwargs):
        file.write(self.dump_to_str(obj, **kwargs))

    def load_from_path(self, filepath, **kwargs):
        with open(filepath, 'r') as f:
            return self.load_from_fileobj(f, **kwargs)

    def dump_to_path(self, obj, filepath, **kwargs):
        with open(filepath, 'w') as f:
            self.dump_to_fileobj(obj, f, **kwargs)


class JsonHandler(BaseFileHandler):

    def load_from_fileobj(self, file, **kwargs):
        return json.load(file, **kwargs)

    def dump_to_str(self, obj, **kwargs):
        kwargs.setdefault('sort_keys', True)
        kwargs.setdefault('indent', 2)
        return json.dumps(obj, **kwargs) + '\n'


class YamlHandler(BaseFileHandler):

    def load_from_fileobj(self, file, **kwargs):
        kwargs.setdefault('Loader', Loader)
        return yaml.load(file, **kwargs)

    def dump_to_str(self, obj, **kwargs):
        kwargs.setdefault('Dumper', Dumper)
        kwargs.setdefault('sort_keys', True)
        return yaml.dump(obj, **kwargs)


file_handlers = {
    'json': JsonHandler(),
    'yaml': YamlHandler(),
    'yml': YamlHandler(),
}


def _infer_format(file, file_format):
    if file_format is not None:
        return file_format
    if isinstance(file, str):
        return file.split('.')[-1]
    return None


def slload(file, file_format=None, **kwargs):
    """Load data from a json/yaml file path or file-like object."""
    if isinstance(file, Path):
        file = str(file)
    file_format = _infer_format(file, file_format)
    if file_format not in file_handlers:
        raise TypeError(f'Unsupported format: {file_format}')

    handler = file_handlers[file_format]
    if isinstance(file, str):
        return handler.load_from_path(file, **kwargs)
    elif hasattr(file, 'read'):
        return handler.load_from_fileobj(file, **kwargs)
    raise TypeError('"file" must be a filepath str or a file-object')


def sldump(obj, file=None, file_format=None, **kwargs):
    """Dump data to a json/yaml string, path or file-like object.

    Returns the serialized string when `file` is None.
    """
    if isinstance(file, Path):
        file = str(file)
    file_format = _infer_format(file, file_format)
    if file_format is None:
        raise ValueError('file_format must be specified since file is None')
    if file_format not in file_handlers:
        raise TypeError(f'Unsupported format: {file_format}')

    handler = file_handlers[file_format]
    if file is None:
        return handler.dump_to_str(obj, **kwargs)
    elif isinstance(file, str):
        handler.dump_to_path(obj, file, **kwargs)
    elif hasattr(file, 'write'):
        handler.dump_to_fileobj(obj, file, **kwargs)
    else:
        raise TypeError('"file" must be a filename str or a file-object')


def dump_table(rows, columns, file=None):
    """Write a list of dict rows as CSV; returns the text when `file` is None."""
    frame = pd.DataFrame(list(rows), columns=list(columns))
    if isinstance(file, Path):
        file = str(file)
    return frame.to_csv(file, index=False, lineterminator='\n')

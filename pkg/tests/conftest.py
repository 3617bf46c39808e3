"""测试共用的 fixture"""

import json

import numpy as np
import pytest

from opa_helper.core.weights import bergman, dirichlet, hardy


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def bergman0():
    return bergman(0)


@pytest.fixture
def hardy_space():
    return hardy()


@pytest.fixture(params=['hardy', 'dirichlet:-3', 'bergman:0', 'bergman:1.5'])
def any_space(request):
    kind, _, arg = request.param.partition(':')
    if kind == 'hardy':
        return hardy()
    return dirichlet(float(arg)) if kind == 'dirichlet' else bergman(float(arg))


@pytest.fixture
def write_json(tmp_path):
    """把对象写成 JSON 文件并返回路径"""
    def write(name, doc):
        path = tmp_path / name
        path.write_text(json.dumps(doc), encoding='utf-8')
        return path
    return write

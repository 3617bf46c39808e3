import pytest

from opa_helper.mcp import initialize_mcp_server
from opa_helper.mcp.resources.weights_resources import register_weights_resources
from opa_helper.mcp.tools.approximant_tools import register_approximant_tools
from opa_helper.mcp.tools.spectral_tools import register_spectral_tools


class FakeMCP:
    """收集被注册的工具与资源"""

    def __init__(self):
        self.tools = {}
        self.resources = {}

    def tool(self):
        def wrap(func):
            self.tools[func.__name__] = func
            return func
        return wrap

    def resource(self, uri):
        def wrap(func):
            self.resources[uri] = func
            return func
        return wrap


@pytest.fixture
def server():
    mcp = FakeMCP()
    register_spectral_tools(mcp)
    register_approximant_tools(mcp)
    register_weights_resources(mcp)
    return mcp


def test_registered_names(server):
    assert set(server.tools) == {'jacobi_norm', 'bergman_spectrum', 'run_verification',
                                 'optimal_approximant', 'zero_statistics'}
    assert set(server.resources) == {'opa://weights-schema'}


def test_jacobi_norm(server):
    text = server.tools['jacobi_norm']('bergman:0')
    assert text.startswith('✅')
    assert '2.1213203' in text
    assert server.tools['jacobi_norm']('sobolev:1').startswith('❌')


def test_bergman_spectrum(server):
    text = server.tools['bergman_spectrum'](0, 2)
    assert '- t_0 = 2.12132034355964' in text
    assert '- t_1 = ' in text
    assert server.tools['bergman_spectrum'](-3).startswith('❌')


def test_run_verification(server):
    assert server.tools['run_verification']('nosuch').startswith('❌')
    text = server.tools['run_verification']('theta-witness')
    assert text.startswith('✅')
    assert '"passed": true' in text


def test_optimal_approximant(server):
    text = server.tools['optimal_approximant']('hardy', 'one_minus_z', 1)
    assert text.startswith('✅')
    assert 'roots' in text
    assert server.tools['optimal_approximant']('hardy', 'nosuch', 1).startswith('❌')


def test_zero_statistics(server):
    text = server.tools['zero_statistics']('hardy', 'one_minus_z', '1..3')
    assert text.startswith('✅')
    assert text.count('\n| ') == 4


def test_weights_schema_resource(server):
    text = server.resources['opa://weights-schema']()
    assert text.startswith('# 自定义权重文件格式')
    assert '"prefix"' in text


def test_initialize_server_once():
    server = initialize_mcp_server()
    assert server is initialize_mcp_server()
    assert server.name == 'opa-helper'

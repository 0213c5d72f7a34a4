from .base_tool import BaseTool, ToolResult, ToolExecutionError
from .action_logger import ActionLoggerTool, log_run_action
from .operator_tools import DescribeTimeScaleTool, FracIntegralTool, FracDerivativeTool
from .solver_tools import SolveIVPTool, SynthesizeControlTool
from .audit_tool import VerifyIdentitiesTool


class ToolRegistry:
    def __init__(self):
        self.tools = {}

    def register(self, tool):
        self.tools[tool.name] = tool

    def get_tool(self, name):
        return self.tools.get(name)

    def list_tool_names(self):
        return list(self.tools.keys())


__all__ = [
    'BaseTool', 'ToolResult', 'ToolExecutionError', 'ToolRegistry',
    'ActionLoggerTool', 'log_run_action',
    'DescribeTimeScaleTool', 'FracIntegralTool', 'FracDerivativeTool',
    'SolveIVPTool', 'SynthesizeControlTool', 'VerifyIdentitiesTool',
]

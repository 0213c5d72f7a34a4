# tools/audit_tool.py
"""Identity audit tool behind the verify command."""

import os
from typing import List, Optional

from evaluation.identity_auditor import IdentityAuditor
from tools.base_tool import EXIT_NUMERICAL, BaseTool, ToolResult
from tools.report_generator import FLOAT_FORMAT, write_json_report, write_text


class VerifyIdentitiesTool(BaseTool):
    def __init__(self):
        super().__init__("verify_identities", "Run the identity catalog and compare verdicts with expectations")

    async def execute(self, seed: int, workers: int, output_dir: str, names: Optional[List[str]] = None,
                      float_format: str = FLOAT_FORMAT) -> ToolResult:
        auditor = IdentityAuditor(workers)
        results = await auditor.run(seed, names)
        files = {
            "report": write_json_report(results, os.path.join(output_dir, "verify_report.json"), float_format),
            "summary": write_text(auditor.summary_table(), os.path.join(output_dir, "verify_summary.txt")),
        }
        data = {"files": files, "identities": len(results), "mismatches": auditor.mismatches}
        if auditor.mismatches:
            return ToolResult(success=False, data=data, exit_code=EXIT_NUMERICAL,
                              error=f"{auditor.mismatches} identity verdicts differ from the expected set")
        return ToolResult(success=True, data=data)

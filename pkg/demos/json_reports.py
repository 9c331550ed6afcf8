# ---
# jupyter:
#   jupytext:
#     formats: py:percent
#   kernelspec:
#     display_name: Python 3
#     language: python
#     name: python3
# ---

# %% [markdown]
# # JSON reports from a configuration
#
# The command-line entry point reads a JSON configuration and writes a
# deterministic report. The same functions are callable in-process.

# %%
import json

from gsfock.cli import dumps_report, parse_config, run_gram, run_report, summary_lines

# %%
cfg = parse_config(json.dumps({"dimension": 2, "statistics": {"family": "quon", "q": 0.5}, "nmax": 3}))
report = run_report(cfg)
print("\n".join(summary_lines(report)))
print(report["levels"][2])

# %% [markdown]
# Single-level Gram with the matrix emitted as `[re, im]` pairs.

# %%
cfg = parse_config(json.dumps({"dimension": 2, "statistics": {"family": "boson"}}))
cfg.emit_matrix = True
print(dumps_report(run_gram(cfg, 2))[:400])

# %% [markdown]
# Shell equivalent:
#
# ```
# gsfock report config.json -o report.json
# gsfock gram config.json --level 3 --emit-matrix
# ```

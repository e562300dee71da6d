# %% [markdown]
# # The `equigeodesic` command
#
# Every capability is also reachable from the shell.  Here the entry point is
# called in-process; from a terminal the same arguments follow `equigeodesic`
# (or `python -m equigeodesic`).

# %%
import json
import tempfile
from pathlib import Path

from equigeodesic.cli import main

main(["spaces"])

# %%
main(["gen-system", "wallach-u3"])

# %%
main(["check", "wallach-so", "--params", "1,3,2"])

# %%
main(["verify", "stiefel-v2", "--n", "5", "--samples", "20"])

# %% [markdown]
# JSON reports are deterministic for a fixed seed, which makes them suitable
# for golden-file comparisons.

# %%
with tempfile.TemporaryDirectory() as tmp:
    paths = [Path(tmp) / f"run{i}.json" for i in range(2)]
    for path in paths:
        main(["solve", "sphere-sp", "--n", "1", "--restarts", "50", "--seed", "4", "--format", "json", "--output", str(path)])
    first, second = (p.read_bytes() for p in paths)
    print("identical:", first == second)
    print("converged:", json.loads(first)["converged_count"])

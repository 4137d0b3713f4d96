from riskrules.cli import run_main

run_main()

from dcrel.cli import main

main()

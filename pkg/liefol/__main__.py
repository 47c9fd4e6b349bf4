from liefol.cli import main

main()

from fraccpp.cli import main

main()

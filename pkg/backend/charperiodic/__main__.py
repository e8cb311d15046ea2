from charperiodic.main import main

main()

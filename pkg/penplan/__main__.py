from penplan.app import main

main()

from pptineq.cli import main

raise SystemExit(main())

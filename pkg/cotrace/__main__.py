from cotrace.cli import main

raise SystemExit(main())

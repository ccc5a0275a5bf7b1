from django_halfspace.cli import main

main()

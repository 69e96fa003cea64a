#!/usr/bin/env python3
"""
Power Operations - Main Runner Script
Forwards engine commands to the CLI and checks the installation
"""

import sys

import app_cli


def check_dependencies():
    """Check if all dependencies are installed"""
    print("🔍 Checking dependencies...")

    required_packages = ['pyparsing', 'diskcache', 'pandas']
    missing_packages = []

    for package in required_packages:
        try:
            __import__(package)
        except ImportError:
            missing_packages.append(package)

    if missing_packages:
        print(f"❌ Missing packages: {', '.join(missing_packages)}")
        print("💡 Run: pip install -r requirements.txt")
        return False
    print("✅ All dependencies are installed!")
    return True


def show_help():
    """Show detailed help information"""
    help_text = """
🧮 Power Operations - Help

USAGE:
    python run.py [COMMAND] [OPTIONS]

COMMANDS:
    reduce        Rewrite an expression to the admissible basis
    basis         Admissible words, Steenrod basis or free algebra basis
    completion    Completion stage basis / structure map between stages
    steenrodize   Map power operations onto the Steenrod algebra
    act           Apply operations to an element of a free allowable algebra
    family        Orbits and family membership, gcd of binomials
    weyl          Weyl group of a subgroup of the symmetric group
    doublecoset   Double coset check for C_p in the symmetric group
    oppattern     Dimension of the weight p operations in degree k
    tatechart     Tate chart for Σ_2 with trivial F_2 coefficients
    check         Check if dependencies are installed
    help          Show this help message

EXAMPLES:
    python run.py reduce -p 2 --side B "Q^5 Q^1"
    python run.py reduce -p 2 --side A "Sq^2 Sq^2 + Sq^3 Sq^1"
    python run.py basis -p 2 --side A --degree 7
    python run.py basis -p 2 --degree 3 --length-cap 2 --generator x:1
    python run.py completion -p 2 --degree 0 --excess-floor -1 --length-cap 2 --target-floor 0
    python run.py steenrodize "Q^-1 Q^-2"
    python run.py act "Q^1" "x y" --generator x:0 --generator y:0
    python run.py family --gcd-binomials 6
    python run.py family -n 4 --perm "(1 2)(3 4)"
    python run.py weyl -n 5
    python run.py doublecoset -p 5
    python run.py oppattern -p 3 -k 2
    python run.py tatechart --q-dims 0:1 --window -3 3 --truncate 0

COMMON OPTIONS:
    -p PRIME              Working prime (default 2)
    --side B|A            Power operations (B) or Steenrod algebra (A)
    --json                Machine-readable output
    --step-budget N       Rewrite steps allowed per input term
    --cache-dir DIR       Persist the rewrite cache between runs
    --verbose / --debug   Log to stderr
    """
    print(help_text)


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    command = argv[0] if argv else 'help'

    if command in ('help', '--help', '-h'):
        show_help()
        return 0

    if command == 'check':
        return 0 if check_dependencies() else 1

    return app_cli.main(argv)


if __name__ == "__main__":
    try:
        sys.exit(main())
    except KeyboardInterrupt:
        print("\n👋 Goodbye!")
        sys.exit(0)

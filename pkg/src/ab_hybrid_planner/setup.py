#!/usr/bin/env python3
"""
Angry Birds Hybrid Planner Setup and Validation Tool

Helps users generate, inspect and validate the planner configuration.
"""

import sys
import argparse
import json
from typing import List, Optional


def main(argv: Optional[List[str]] = None) -> int:
    parser = argparse.ArgumentParser(
        description="Angry Birds Hybrid Planner Setup and Validation Tool",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Check configuration and show status
  ab-plan-setup --check

  # Generate JSON configuration file with every default
  ab-plan-setup --generate-config

  # Show where configuration values are coming from
  ab-plan-setup --show-sources

  # Print the effective settings as JSON
  ab-plan-setup --dump
        """
    )

    parser.add_argument(
        '--check', '-c',
        action='store_true',
        help='Validate the configuration and show status'
    )

    parser.add_argument(
        '--generate-config',
        action='store_true',
        help='Generate a sample JSON configuration file'
    )

    parser.add_argument(
        '--config-file',
        default='.abplan.config.json',
        help='Path to JSON configuration file (default: .abplan.config.json)'
    )

    parser.add_argument(
        '--show-sources',
        action='store_true',
        help='Show where each configuration value is coming from'
    )

    parser.add_argument(
        '--dump',
        action='store_true',
        help='Print the effective settings as JSON'
    )

    args = parser.parse_args(argv)

    from .config import get_config

    config = get_config()
    ok = True

    if args.check or not any([args.generate_config, args.show_sources, args.dump]):
        ok = check_configuration(config)

    if args.generate_config:
        generate_json_config(config, args.config_file)

    if args.show_sources:
        show_configuration_sources(config)

    if args.dump:
        dump_settings(config)

    return 0 if ok else 1


def check_configuration(config) -> bool:
    """Check and display configuration status."""
    print("🔍 Angry Birds Hybrid Planner Configuration Check")
    print("=" * 50)
    print(f"🐍 Python: {sys.version.split()[0]}")
    print(f"📄 Config file: {config.config_file or 'none (defaults and environment)'}")
    print()

    issues = config.validate_setup()
    if not issues:
        search = config.get_search_config()
        timeouts = config.get_cascade_timeouts()
        print(f"✅ Search: dt={search.dt} horizon={search.horizon} macro_step={search.macro_step}")
        print(f"✅ Cascade: {timeouts.single_shot}s + {timeouts.no_blocks}s, default angle {timeouts.default_angle}°")
        print()
        print("🎉 Configuration is valid!")
        print("   You can now run: ab-plan --help")
        return True

    print("⚠️  Some settings need attention.")
    print("\n📋 Specific Issues:")
    for issue in issues:
        print(f"   • {issue}")
    return False


def generate_json_config(config, config_file):
    """Generate a JSON configuration file."""
    print(f"📄 Generating JSON configuration file: {config_file}")

    try:
        config_path = config.generate_sample_config(config_file)
        print(f"✅ JSON configuration written to: {config_path.absolute()}")
        print("   Values are pre-filled with the built-in defaults.")
        print("   Edit this file and it will take priority over environment variables.")
    except OSError as e:
        print(f"❌ Failed to generate configuration file: {e}")


def show_configuration_sources(config):
    """Show where each configuration value is coming from."""
    print("🔍 Configuration Sources")
    print("=" * 50)

    for component, info in config.show_configuration_sources().items():
        print(f"📊 {component}:")
        print(f"   Value: {info['value']}")
        print(f"   Source: {info['source']}")
        print()

    print("Configuration Priority (highest to lowest):")
    print("   1. JSON configuration file")
    print("   2. Environment variables")
    print("   3. Default values")


def dump_settings(config):
    settings = {
        "search": config.get_search_config().model_dump(),
        "cascade": config.get_cascade_timeouts().model_dump(),
        "physics": config.get_domain_constants().model_dump(mode="json"),
        "scoring": config.get_score_weights().model_dump(),
        "benchmark": config.get_benchmark_settings().model_dump(),
        "logging": {"level": config.get_log_level()},
    }
    print(json.dumps(settings, indent=2))


if __name__ == "__main__":
    sys.exit(main())

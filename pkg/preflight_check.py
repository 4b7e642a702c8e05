#!/usr/bin/env python3
"""
Pre-flight checklist for rees-lab
Validates configuration, dependencies and the fixture corpus before long runs
"""

import logging
import sys
from pathlib import Path

from pydantic import ValidationError

from config import (
    BOURBAKI_RETRIES, DEPTH_TRIALS, FIELD_CHARACTERISTIC, FIXTURES_DIR, LOG_LEVEL, RANK_TRIALS,
    REDUCTION_R_MAX, SYMBOLIC_VARIABLE_BUDGET,
)
from errors import ReesLabError
from models import FieldSpec

logger = logging.getLogger(__name__)


class EnvironmentValidator:
    def __init__(self, fixtures_dir: Path = FIXTURES_DIR):
        self.fixtures_dir = Path(fixtures_dir)
        self.errors = []
        self.warnings = []
        self.success_count = 0

    def check_python_version(self):
        """Verify Python version"""
        logger.info("🐍 Checking Python version...")
        version = sys.version_info
        if version.major == 3 and version.minor >= 10:
            logger.info(f"   ✓ Python {version.major}.{version.minor}.{version.micro}")
            self.success_count += 1
            return True
        self.errors.append(f"❌ Python 3.10+ required, found {version.major}.{version.minor}")
        return False

    def check_config(self, characteristic: int = FIELD_CHARACTERISTIC):
        """Verify REES_LAB_* settings are usable"""
        logger.info("📝 Checking configuration...")
        ok = True
        try:
            FieldSpec(characteristic=characteristic)
        except ValidationError as e:
            reason = e.errors()[0]["msg"]
            self.errors.append(f"❌ REES_LAB_CHAR={characteristic}: {reason}")
            ok = False
        else:
            logger.info(f"   ✓ GF({characteristic})")
            self.success_count += 1

        counts = {
            "REES_LAB_RANK_TRIALS": RANK_TRIALS,
            "REES_LAB_DEPTH_TRIALS": DEPTH_TRIALS,
            "REES_LAB_R_MAX": REDUCTION_R_MAX,
            "REES_LAB_BOURBAKI_RETRIES": BOURBAKI_RETRIES,
        }
        for var, value in counts.items():
            if value < 1:
                self.errors.append(f"❌ {var}={value}: must be positive")
                ok = False
            else:
                self.success_count += 1
        if SYMBOLIC_VARIABLE_BUDGET > 8:
            self.warnings.append(f"⚠️ REES_LAB_SYMBOLIC_BUDGET={SYMBOLIC_VARIABLE_BUDGET}: symbolic runs may not finish")
        if not isinstance(logging.getLevelName(LOG_LEVEL), int):
            self.warnings.append(f"⚠️ REES_LAB_LOG_LEVEL={LOG_LEVEL}: unknown level, WARNING is used")
        return ok

    def check_dependencies(self):
        """Verify all required packages are installed"""
        logger.info("📦 Checking dependencies...")
        required_packages = {
            'pydantic': 'Data Validation',
            'dotenv': 'Environment Loading',
            'sympy': 'Polynomial Parsing and Matrices over GF(p)',
        }
        all_installed = True
        for package, description in required_packages.items():
            try:
                __import__(package)
                logger.info(f"   ✓ {package}: {description}")
                self.success_count += 1
            except ImportError:
                self.errors.append(f"❌ {package}: {description} - Not installed")
                all_installed = False
        return all_installed

    def check_fixtures(self):
        """Every fixture loads, and the manifest describes it"""
        logger.info("📂 Checking fixtures...")
        from modpres import PresentationMatrix, rank_of_module
        from utils import load_input_document

        manifest_path = self.fixtures_dir / "manifest.json"
        if not manifest_path.exists():
            self.warnings.append(f"⚠️ {manifest_path}: Not found")
            manifest = {}
        else:
            import json
            manifest = json.loads(manifest_path.read_text(encoding="utf-8"))

        paths = sorted(p for p in self.fixtures_dir.glob("*.json") if p.name != "manifest.json")
        if not paths:
            self.errors.append(f"❌ No fixtures in {self.fixtures_dir}")
            return False
        ok = True
        for path in paths:
            try:
                _, doc = load_input_document(str(path))
                info = rank_of_module(PresentationMatrix.from_document(doc))
            except ReesLabError as e:
                self.errors.append(f"❌ {path.name}: {e}")
                ok = False
                continue
            expected = manifest.get(path.stem)
            if expected is None:
                self.warnings.append(f"⚠️ {path.stem}: no manifest entry")
            elif expected.get("rank") != info.rank_e:
                self.errors.append(f"❌ {path.stem}: rank {info.rank_e}, manifest says {expected.get('rank')}")
                ok = False
                continue
            logger.info(f"   ✓ {path.stem}: rank {info.rank_e}, {len(doc.matrix)} generators")
            self.success_count += 1
        return ok

    def check_smoke_computation(self):
        """Rees ideal of (x^2, xy, y^2)"""
        logger.info("🧮 Running smoke computation...")
        from modpres import PresentationMatrix
        from polycore import Ideal, PolyRing, ideal_equal
        from reescore import rees_ideal

        phi = PresentationMatrix.parse(PolyRing.polynomial_ring(["x", "y"]), [["y", "0"], ["-x", "y"], ["0", "-x"]])
        rd = rees_ideal(phi)
        expected = Ideal.parse(rd.ring, ["y*T_1 - x*T_2", "y*T_2 - x*T_3", "T_1*T_3 - T_2^2"])
        if ideal_equal(rd.J, expected):
            logger.info("   ✓ Rees ideal matches")
            self.success_count += 1
            return True
        self.errors.append(f"❌ Smoke computation returned {rd.J.dump()}")
        return False

    def validate_all(self):
        """Run all validation checks"""
        logger.info("\n" + "=" * 60)
        logger.info("🔍 rees-lab - Pre-flight Checklist")
        logger.info("=" * 60 + "\n")

        checks = [
            self.check_python_version,
            self.check_config,
            self.check_dependencies,
            self.check_fixtures,
            self.check_smoke_computation,
        ]
        for check in checks:
            try:
                check()
            except Exception as e:
                self.errors.append(f"❌ {check.__name__}: {e}")
                logger.error(f"Error during check: {e}")

        logger.info("\n" + "=" * 60)
        logger.info("📊 Summary")
        logger.info("=" * 60)
        logger.info(f"✓ Checks passed: {self.success_count}")
        if self.errors:
            logger.error(f"❌ Errors: {len(self.errors)}")
            for error in self.errors:
                logger.error(f"   {error}")
        if self.warnings:
            logger.warning(f"⚠️  Warnings: {len(self.warnings)}")
            for warning in self.warnings:
                logger.warning(f"   {warning}")
        logger.info("=" * 60 + "\n")

        if self.errors:
            logger.error("❌ Pre-flight check FAILED")
            return False
        logger.info("✅ Pre-flight check PASSED")
        return True


if __name__ == "__main__":
    logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(levelname)s - %(message)s')
    validator = EnvironmentValidator()
    sys.exit(0 if validator.validate_all() else 1)

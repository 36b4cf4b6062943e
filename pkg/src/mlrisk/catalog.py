"""Built-in evaluation factor catalog.

31 factors in four groups: data (D.01-D.07), model (M.01-M.07), execution
environment (E.01-E.07) and security controls (S.01-S.10). Each has three
qualitative implementation levels; the numeric anchors 0.0 / 0.5 / 1.0 are
defaults only, any value in [0, 1] may be assigned, and deployments can
override the anchors by building their own entries.
"""

from __future__ import annotations

from dataclasses import dataclass

from .domain import BaseWeightMatrix, EvaluationFactor, FactorCategory
from .errors import IndexOutOfRange, UnknownCatalogId

DEFAULT_LEVEL_SCORES = (0.0, 0.5, 1.0)


@dataclass(frozen=True)
class CatalogLevel:
    label: str
    description: str
    guideline_score: float


@dataclass(frozen=True)
class CatalogEntry:
    """One catalog factor with its three guideline implementation levels."""

    id: str
    name: str
    category: FactorCategory
    levels: tuple[CatalogLevel, CatalogLevel, CatalogLevel]


# (id, name, ((label, description) x3)) per category. Descriptions are kept
# word-for-word, including D.03/D.04 sharing identical level texts.
_DATA = (
    ("D.01", "Collected training data quality", (
        ("No guarantees", "data provenance is not clear, integrity cannot be checked"),
        ("Partial guarantees", "data provenance is known, integrity can be checked to some extent"),
        ("High guarantees", "data provenance is known, all the data is inventoried, integrity is guaranteed"),
    )),
    ("D.02", "Labeling quality", (
        ("No guarantees", "labeling of the data was done by a third-party and was not checked for correctness"),
        ("Partial guarantees", "labeling was done by a trustworthy third-party, but was not checked for correctness"),
        ("High guarantees", "all the data labeling was checked for correctness"),
    )),
    ("D.03", "Data and information flow", (
        ("Not secure", "data flow to the model is not secured by information security controls -- confidentiality, integrity, and availability can be compromised"),
        ("Secure", "confidentiality and integrity is protected by security controls, but availability can be affected"),
        ("Secure and guaranteed", "like Secure, but with added measures to protect availability to support business continuity"),
    )),
    ("D.04", "Data storage", (
        ("Not secure", "data storage is not secured by information security controls -- confidentiality, integrity, and availability can be compromised"),
        ("Secure", "confidentiality and integrity is protected by security controls, but availability can be affected"),
        ("Secure and guaranteed", "like Secure, but with added measures to protect availability to support business continuity"),
    )),
    ("D.05", "Data governance", (
        ("Undefined", "data governance is not clear -- accountability is not implemented"),
        ("Semi-defined", "data governance is defined but the responsibilities are not clear"),
        ("Defined", "responsibilities for handling and securing the data are clearly defined and assigned to trained personnel"),
    )),
    ("D.06", "Data quality reviews", (
        ("Undefined", "there are no reviews related to data quality"),
        ("Ad-hoc", "data quality is reviewed in case a problem is found"),
        ("Regular", "policies to guarantee regular data quality reviews are deployed"),
    )),
    ("D.07", "Data leveraging", (
        ("Undefined", "there is no process in place to ensure proper usage of data from public domain or other sources"),
        ("Semi-defined", "there are guidelines in place to handle usage of data from public domain and other sources but their application is not strictly enforced"),
        ("Defined", "there is a formal process in place to handle usage of data from public domain and other sources"),
    )),
)

_MODEL = (
    ("M.01", "Model governance", (
        ("Undefined", "model governance is not clear -- accountability is not implemented"),
        ("Semi-defined", "governance ownership is defined but the responsibilities are not clear"),
        ("Defined", "responsibilities for handling and securing the model are clearly defined and assigned to trained personnel"),
    )),
    ("M.02", "Model storage", (
        ("Not secure", "model data is not secured by information security controls -- confidentiality, integrity, and availability can be compromised"),
        ("Secure", "confidentiality and integrity is protected by security controls, but availability can be affected"),
        ("Secure and guaranteed", "like Secure, but with added measures to protect availability to support business continuity"),
    )),
    ("M.03", "Model robustness", (
        ("Not implemented", "adversarial attacks are not taken into account when the models are constructed"),
        ("Partially implemented", "security-critical models are trained to be robust against pre-defined set of adversarial attacks"),
        ("Fully implemented", "all the model are trained to be robust against potential adversarial attacks"),
    )),
    ("M.04", "Change control", (
        ("Undefined", "there is no change control in place -- when new model is created, it replaces the old one"),
        ("Semi-defined", "there is a repository of older models, but no formalized way to rollback the changes"),
        ("Defined", "there is a formal process for change control in place"),
    )),
    ("M.05", "Computational redundancy", (
        ("Not implemented", "there is no redundant computation taking place, all the results are obtained from a single model"),
        ("Dual redundancy", "there are two different models in place, if the result is not the same, it is not used"),
        ("Multiple redundancy", "there are multiple models in place, the result is obtained by majority voting"),
    )),
    ("M.06", "Model deployment guarantees", (
        ("Third-party deployment", "no knowledge of the deployment environment, no security guarantees"),
        ("Client deployment", "partial knowledge of the deployment environment, partial security guarantees"),
        ("In-house deployment", "full knowledge of the environment, full security guarantees"),
    )),
    ("M.07", "Runtime validation", (
        ("Undefined", "there are no runtime validation processes in place"),
        ("Semi-defined", "runtime validation is performed, but there is no formal process on how to interpret the results"),
        ("Defined", "there is a formal process to guide the runtime validation and to interpret the results"),
    )),
)

_EXECUTION = (
    ("E.01", "System patches and versioning", (
        ("Not implemented", "there are no formal processes for patching and versioning of systems, updates are implemented ad-hoc"),
        ("Partially implemented", "critical patches are implemented, but there is no versioning that could revert the potentially unwanted changes"),
        ("Fully implemented", "processes are set to keep the systems to date with the latest patches and versioning is implemented to be able to revert the changes in case it is needed"),
    )),
    ("E.02", "Software integrity", (
        ("Not implemented", "integrity checking mechanisms for software are not implemented"),
        ("Partially implemented", "critical software components are periodically subjected to integrity checks"),
        ("Fully implemented", "all software components of critical systems are periodically subjected to integrity checks"),
    )),
    ("E.03", "Supply chain security", (
        ("Undefined", "there are no processes in place that would mitigate potential security incidents related to supply chain"),
        ("Semi-defined", "some processes for supply chain security are in place, but they are not formally defined"),
        ("Defined", "processes are in place to handle security related to supply chain"),
    )),
    ("E.04", "Backups", (
        ("Not implemented", "procedures for information system backups are not in place"),
        ("Partially implemented", "procedures for backups of critical information systems are defined"),
        ("Fully implemented", "formal procedures for backups for all information systems are in place"),
    )),
    ("E.05", "Maintenance", (
        ("Not implemented", "procedures for maintenance and repair of information systems are not in place"),
        ("Partially implemented", "procedures for maintenance and repair of critical information systems are defined"),
        ("Fully implemented", "formal procedures for maintenance and repair for all information systems are in place"),
    )),
    ("E.06", "Network monitoring", (
        ("Not implemented", "monitoring of computer networks for anomalies and incidents is not implemented"),
        ("Partially implemented", "some parts of the computer networks are monitored for anomalies and incidents"),
        ("Fully implemented", "formal procedures for monitoring computer networks for anomalies and incidents are defined"),
    )),
    ("E.07", "Deployment validation", (
        ("Not implemented", "ML-based systems are not validated at the place of deployment"),
        ("Partially implemented", "deployment validation of ML-based systems is performed, but there are no formal procedures"),
        ("Fully implemented", "formal procedures for deployment validation of ML-based systems are in place"),
    )),
)

_CONTROLS = (
    ("S.01", "Cybersecurity roles and responsibilities", (
        ("Undefined", "there are no cybersecurity roles defined within the organization"),
        ("Semi-defined", "cybersecurity roles are present in the organization but their responsibilities are not clearly defined"),
        ("Defined", "cybersecurity roles and responsibilities within the organization are clearly defined"),
    )),
    ("S.02", "Accountability", (
        ("Not implemented", "there are no processes in place related to accountability"),
        ("Partially implemented", "actions are logged on some devices, but the accountability is not strictly enforced"),
        ("Fully implemented", "all the processes that are required for accountability are clearly defined"),
    )),
    ("S.03", "Security awareness and training", (
        ("Not implemented", "there is no security awareness in the organization and no security-related trainings"),
        ("Partially implemented", "security-critical roles are trained to obey best practices, but security awareness is not present throughout the entire organization"),
        ("Fully implemented", "security awareness is present in the entire organization and regular trainings are conducted to keep employees up to date with the latest practices"),
    )),
    ("S.04", "Identity management and access control", (
        ("Not implemented", "there are no processes in place related to identity management and access control"),
        ("Partially implemented", "some processes for identity management are implemented but access control is not clearly defined w.r.t. organizational roles"),
        ("Fully implemented", "identity management processes are clearly defined to provide procedures for user enrollment, authorization and authentication"),
    )),
    ("S.05", "Business continuity and disaster recovery", (
        ("Not implemented", "there is no business continuity implemented in the organization"),
        ("Partially implemented", "some processes are in place, but they are not formally defined -- timeline for disaster recovery is not clear"),
        ("Fully implemented", "processes are defined to handle unexpected events that can disturb business continuity"),
    )),
    ("S.06", "Incident reporting", (
        ("Not implemented", "procedures for incident reporting are not implemented"),
        ("Partially implemented", "incident reporting is done to some extend, but there are no formal procedures in place"),
        ("Fully implemented", "formal procedures for incident reporting are defined"),
    )),
    ("S.07", "Incident response", (
        ("Not implemented", "procedures for incident response are not implemented"),
        ("Partially implemented", "incident response is done to some extend, but there are no formal procedures in place"),
        ("Fully implemented", "formal procedures for incident response are defined"),
    )),
    ("S.08", "Forensics", (
        ("Not implemented", "processes for forensics investigation after an incident are not implemented"),
        ("Partially implemented", "processes for forensics investigation after a major incident are in place"),
        ("Fully implemented", "formal processes for forensics investigation after an incident are in place"),
    )),
    ("S.09", "Incident mitigation strategy", (
        ("Not implemented", "strategies to mitigate incidents are not revised after an incident"),
        ("Partially implemented", "strategies to mitigate incidents are revised after a major incident"),
        ("Fully implemented", "there is a formal procedure on incident mitigation strategy -- incidents are revisited after an incident and updated to incorporate lessons learned"),
    )),
    ("S.10", "Communication of recovery activities", (
        ("Not implemented", "there is no process for communicating of recovery activities to relevant parties"),
        ("Partially implemented", "recovery activities after major incident are communicated to relevant parties"),
        ("Fully implemented", "formal procedures for communicating of recovery activities to relevant parties are in place"),
    )),
)

_BY_CATEGORY = (
    (FactorCategory.DATA, _DATA),
    (FactorCategory.MODEL, _MODEL),
    (FactorCategory.EXECUTION_ENVIRONMENT, _EXECUTION),
    (FactorCategory.SECURITY_CONTROLS, _CONTROLS),
)


def builtin_catalog() -> list[CatalogEntry]:
    """All 31 built-in entries (7 data, 7 model, 7 execution environment,
    10 security controls) with the default guideline anchors."""
    entries = []
    for category, rows in _BY_CATEGORY:
        for entry_id, name, levels in rows:
            entries.append(
                CatalogEntry(
                    id=entry_id,
                    name=name,
                    category=category,
                    levels=tuple(
                        CatalogLevel(label, description, score)
                        for (label, description), score in zip(levels, DEFAULT_LEVEL_SCORES)
                    ),
                )
            )
    return entries


def guideline_score(entry: CatalogEntry, level_index: int) -> float:
    """The guideline implementation score for level 0, 1 or 2."""
    if level_index not in (0, 1, 2):
        raise IndexOutOfRange(f"level index must be 0, 1 or 2, got {level_index!r}")
    return entry.levels[level_index].guideline_score


def instantiate_from_catalog(
    ids: list[str],
    catalog: list[CatalogEntry] | None = None,
) -> list[EvaluationFactor]:
    """Evaluation factors for the given catalog ids, with zeroed base
    weights and costs and implementation score 0, ready for the assessor."""
    entries = {entry.id: entry for entry in (catalog if catalog is not None else builtin_catalog())}
    factors = []
    for entry_id in ids:
        entry = entries.get(entry_id)
        if entry is None:
            raise UnknownCatalogId(f"no catalog entry with id {entry_id!r}")
        factors.append(
            EvaluationFactor(
                id=entry.id,
                name=entry.name,
                category=entry.category,
                base_weights=BaseWeightMatrix.zero(),
            )
        )
    return factors

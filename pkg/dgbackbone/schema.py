"""Document de sortie structuré (``--format structured-all``), versionné.

Modèles pydantic : la forme JSON est le contrat consommé par les scripts de
non-régression. ``schema_version`` change à toute modification incompatible.
"""
from __future__ import annotations

from pydantic import BaseModel, Field

from .fstruct.render import to_document
from .order.deptree import Word
from .order.domains import Domain
from .parser.chart import CNode
from .parser.pipeline import Analysis, AnalysisSet

SCHEMA_VERSION = 1


class CNodeModel(BaseModel):
    category: str
    kind: str
    start: int
    end: int
    token: str | None = None
    children: list[CNodeModel] = Field(default_factory=list)


class FNodeModel(BaseModel):
    id: int
    atoms: dict[str, str]
    links: dict[str, int]


class FStructureModel(BaseModel):
    root: int
    nodes: list[FNodeModel]


class WordModel(BaseModel):
    index: int
    surface: str
    word_class: str


class DepEdgeModel(BaseModel):
    head: int
    dep: str
    dependent: int


class DependencyModel(BaseModel):
    root: int
    edges: list[DepEdgeModel]


class DomainModel(BaseModel):
    id: int
    category: str
    slot: str
    field: str | None = None
    owner: int
    parent: int | None = None
    start: int
    end: int
    words: list[int]
    domains: list[int]


class ResolvedPathModel(BaseModel):
    word: int
    path: list[str]


class AnalysisModel(BaseModel):
    c_structure: CNodeModel
    f_structure: FStructureModel
    dependencies: DependencyModel
    domains: list[DomainModel]
    resolved: list[ResolvedPathModel]


class ParseDocument(BaseModel):
    schema_version: int = SCHEMA_VERSION
    line: int | None = None
    sentence: str
    words: list[WordModel]
    analyses: list[AnalysisModel]


def _cnode(node: CNode) -> CNodeModel:
    return CNodeModel(
        category=node.category.name,
        kind=str(node.category.kind),
        start=node.start,
        end=node.end,
        token=node.token,
        children=[_cnode(c) for c in node.children],
    )


def _domain(domain: Domain) -> DomainModel:
    return DomainModel(
        id=domain.ident,
        category=domain.category,
        slot=domain.slot,
        field=domain.field_label,
        owner=domain.owner.index if domain.owner is not None else -1,
        parent=domain.parent.ident if domain.parent is not None else None,
        start=domain.start,
        end=domain.end,
        words=[i.index for i in domain.items if isinstance(i, Word)],
        domains=[i.ident for i in domain.items if isinstance(i, Domain)],
    )


def analysis_model(analysis: Analysis) -> AnalysisModel:
    dep = analysis.dep_tree
    return AnalysisModel(
        c_structure=_cnode(analysis.c_tree),
        f_structure=FStructureModel.model_validate(to_document(analysis.f_root)),
        dependencies=DependencyModel(
            root=dep.root.index,
            edges=[DepEdgeModel(head=e.head.index, dep=e.dep, dependent=e.dependent.index) for e in dep.edges],
        ),
        domains=[_domain(d) for d in analysis.domain_tree.domains],
        resolved=[ResolvedPathModel(word=w, path=list(p)) for w, p in analysis.resolved],
    )


def parse_document(result: AnalysisSet, *, line: int | None = None) -> ParseDocument:
    words: list[WordModel] = []
    if result.analyses:
        words = [WordModel(index=w.index, surface=w.surface, word_class=w.word_class)
                 for w in result.analyses[0].dep_tree.words]
    else:
        words = [WordModel(index=i, surface=t, word_class="") for i, t in enumerate(result.tokens)]
    return ParseDocument(
        line=line,
        sentence=result.sentence,
        words=words,
        analyses=[analysis_model(a) for a in result.analyses],
    )

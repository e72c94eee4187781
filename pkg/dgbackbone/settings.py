from pydantic import Field

try:
    # Pydantic v2 stack (preferred)
    from pydantic_settings import BaseSettings, SettingsConfigDict
    _HAS_PYDANTIC_V2_SETTINGS = True
except Exception:
    # Compatibility for environments still pinned to pydantic v1.
    from pydantic import BaseSettings
    SettingsConfigDict = None
    _HAS_PYDANTIC_V2_SETTINGS = False


class Settings(BaseSettings):
    if _HAS_PYDANTIC_V2_SETTINGS:
        model_config = SettingsConfigDict(env_prefix="DG_", extra="ignore")
    else:
        class Config:
            env_prefix = "DG_"
            extra = "ignore"

    # Grammaire par défaut quand -g est absent
    grammar_path: str | None = Field(default=None)

    # Bornes de calcul (garde-fous contre les grammaires pathologiques)
    max_unpack: int = Field(default=1000)   # c-structures dépliées par phrase
    oracle_bound: int = Field(default=8)    # mots max pour l'oracle
    batch_workers: int = Field(default=4)

    # Backbone : restreindre DOMAIN aux modifieurs possibles (langage inchangé)
    specialize_backbone: bool = Field(default=True)

    # Logs (stderr uniquement : stdout = flux de résultats)
    log_format: str = Field(default="text")  # "text" | "json"
    log_level: str = Field(default="WARNING")
    metrics_enabled: bool = Field(default=True)


settings = Settings()

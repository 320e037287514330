from groups.exceptions import AlgebraError


class NotAWitness(AlgebraError):
    """Свидетель не удовлетворяет уравнению вырожденности."""


class DecompositionFailure(AlgebraError):
    """Не найдено разложение ⟨σ^m̄, σ^n̄⟩ = ⟨τ₁⟩ ⊕ ⟨τ₂⟩."""

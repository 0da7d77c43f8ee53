"""
Visualization Module
Creates interactive charts of rings, classification runs, scans and orbit sums using Plotly
"""

from typing import Optional

import numpy as np
import pandas as pd
import plotly.express as px
import plotly.graph_objects as go

from modules.based_ring import CodegreeSet, FusionRing, mult_matrices
from modules.cyclotomic_obstruction import OrbitReport


def create_fusion_heatmap(
    ring: FusionRing,
    index: int,
    title: Optional[str] = None
) -> go.Figure:
    """
    Create heatmap of the left multiplication matrix of one basis element.

    Args:
        ring: Based ring
        index: Basis element i; cell (k, j) holds N_ij^k
        title: Chart title (defaults to the element label)

    Returns:
        Plotly Figure object
    """
    matrix = mult_matrices(ring)[index]
    labels = list(ring.labels)

    fig = go.Figure(data=go.Heatmap(
        z=matrix,
        x=labels,
        y=labels,
        colorscale='Greens',
        text=matrix,
        texttemplate='%{text}',
        hovertemplate=f'{labels[index]}' + ' · %{x} ∋ %{y}: %{z}<extra></extra>'
    ))

    fig.update_layout(
        title=title or f"Multiplication by {labels[index]}",
        xaxis_title='right factor',
        yaxis_title='summand',
        yaxis=dict(autorange='reversed'),
        height=420,
        font=dict(size=12)
    )

    return fig


def create_codegree_bar_chart(
    codegrees: CodegreeSet,
    title: str = "Formal Codegrees"
) -> go.Figure:
    """
    Create bar chart of the formal codegrees, with the exact values on hover.

    Args:
        codegrees: Formal codegrees of a ring
        title: Chart title

    Returns:
        Plotly Figure object
    """
    frame = pd.DataFrame({
        'index': [f"f{i + 1}" for i in range(len(codegrees.values))],
        'value': [float(f) for f in codegrees.values],
        'exact': [str(f) for f in codegrees.values],
    })

    fig = px.bar(
        frame,
        x='index',
        y='value',
        title=title,
        hover_data={'exact': True, 'value': ':.4f'},
        labels={'index': 'codegree', 'value': 'value'},
        color='index',
        color_discrete_sequence=px.colors.qualitative.Set2
    )

    fig.update_layout(
        height=420,
        showlegend=False,
        font=dict(size=12)
    )

    return fig


def create_classification_scatter(
    rows: pd.DataFrame,
    title: str = "R(x, y, g, d) candidates"
) -> go.Figure:
    """
    Create scatter plot of classification candidates, d against gamma, coloured by decision branch.

    Args:
        rows: Classification rows (one per candidate)
        title: Chart title

    Returns:
        Plotly Figure object
    """
    fig = px.scatter(
        rows,
        x='d',
        y='gamma',
        color='branch',
        symbol='verdict',
        hover_data=['x', 'y', 'g', 'K', 'codegrees', 'rejected_by', 'family'],
        title=title,
        labels={'d': 'd', 'gamma': 'γ'},
        color_discrete_sequence=px.colors.qualitative.Set2
    )

    fig.update_traces(marker=dict(size=10, line=dict(width=1, color='DarkSlateGrey')))
    fig.update_layout(
        hovermode='closest',
        height=500,
        font=dict(size=12)
    )

    return fig


def create_scan_chart(
    rows: pd.DataFrame,
    title: str = "Roots available against roots required"
) -> go.Figure:
    """
    Create bar chart of the root-of-unity budget per parameter with the required count overlaid.

    Args:
        rows: Scan rows with 'param', 'feasible', 'budget' and 'required'
        title: Chart title

    Returns:
        Plotly Figure object
    """
    frame = rows.copy()
    frame['required'] = pd.to_numeric(frame['required'], errors='coerce')
    frame['budget'] = pd.to_numeric(frame['budget'], errors='coerce')

    fig = go.Figure()

    fig.add_trace(go.Bar(
        x=frame['param'],
        y=frame['budget'],
        marker=dict(color=np.where(frame['feasible'], '#2D5016', '#C8C8C8')),
        customdata=frame['case'],
        name='budget',
        hovertemplate='<b>%{x}</b><br>budget: %{y}<br>case: %{customdata}<extra></extra>'
    ))

    fig.add_trace(go.Scatter(
        x=frame['param'],
        y=frame['required'],
        mode='markers',
        marker=dict(size=9, color='red', symbol='line-ew-open', line=dict(width=3)),
        name='required'
    ))

    fig.update_layout(
        title=title,
        xaxis_title='parameter',
        yaxis_title='number of roots of unity',
        barmode='overlay',
        height=500,
        font=dict(size=12)
    )

    return fig


def create_orbit_plot(
    report: OrbitReport,
    title: Optional[str] = None
) -> go.Figure:
    """
    Create plot of the primitive roots of unity of one order, grouped by Galois orbit.

    Args:
        report: Orbit sums for (c, Y)
        title: Chart title

    Returns:
        Plotly Figure object
    """
    fig = go.Figure()

    angles = np.linspace(0, 2 * np.pi, 361)
    fig.add_trace(go.Scatter(
        x=np.cos(angles),
        y=np.sin(angles),
        mode='lines',
        name='unit circle',
        line=dict(dash='dash', color='lightgrey'),
        hoverinfo='skip'
    ))

    palette = px.colors.qualitative.Set2
    for number, orbit in enumerate(report.orbits):
        exponents = np.array(orbit.exponents)
        phases = 2 * np.pi * exponents / report.order
        fig.add_trace(go.Scatter(
            x=np.cos(phases),
            y=np.sin(phases),
            mode='markers',
            marker=dict(size=11, color=palette[number % len(palette)]),
            customdata=exponents,
            name=f"sum {orbit.total}",
            hovertemplate='ζ^%{customdata}<extra></extra>'
        ))

    fig.update_layout(
        title=title or f"Primitive {report.order}-th roots of unity over Q(√{report.c})",
        xaxis=dict(scaleanchor='y', zeroline=True),
        height=520,
        font=dict(size=12)
    )

    return fig

"""
fuscat explorer
Streamlit front end over the ring verifier, the classification run, the obstruction scans
and the roots-of-unity tools
"""

import pandas as pd
import streamlit as st

from config.messages import MESSAGES
from config.settings import (
    APP_TITLE,
    APP_VERSION,
    DEFAULT_BOX,
    DEFAULT_MAX_C,
    DEFAULT_MAX_COUNT,
    DEFAULT_MAX_E,
    DEFAULT_MAX_ORDER,
    PAGE_CONFIG,
)
from modules.based_ring import formal_codegrees, fpdim, verify_based_ring
from modules.center_obstruction import scan, twist_identity_checks
from modules.codegree_obstruction import classify_rank4, ostrik_gates
from modules.cyclotomic_obstruction import minroots_bruteforce, orbit_sums
from modules.data_manager import export_data_csv, load_ring_file, to_json, to_text, validate_ring
from modules.errors import FuscatError
from modules.exact_arith import QuadVal
from modules.rank4_families import Box, k1_ring, k2_ring
from visualization.charts import (
    create_classification_scatter,
    create_codegree_bar_chart,
    create_fusion_heatmap,
    create_orbit_plot,
    create_scan_chart,
)

# Configure Streamlit page
st.set_page_config(**PAGE_CONFIG)

# Custom CSS
st.markdown("""
    <style>
    .title {
        text-align: center;
        color: #2D5016;
        font-size: 2.2em;
        margin-bottom: 0.2em;
    }
    .subtitle {
        text-align: center;
        color: #5A7A3A;
        font-size: 1.1em;
        margin-bottom: 1em;
    }
    .footer {
        text-align: center;
        color: #999;
        font-size: 0.85em;
        margin-top: 3em;
        padding-top: 1em;
        border-top: 1px solid #eee;
    }
    </style>
    """, unsafe_allow_html=True)

# Initialize session state
if 'ring' not in st.session_state:
    st.session_state.ring = None
if 'classification' not in st.session_state:
    st.session_state.classification = None
if 'scan_report' not in st.session_state:
    st.session_state.scan_report = None

# Main header
st.markdown(f"""
<div class="title">🧮 {APP_TITLE}</div>
<div class="subtitle">{MESSAGES['home_subtitle']}</div>
""", unsafe_allow_html=True)

# Sidebar navigation
with st.sidebar:
    st.markdown("### 📋 " + MESSAGES['nav_home'])
    st.markdown(f"**{MESSAGES['footer_version']}:** {APP_VERSION}")
    st.divider()

    page = st.radio(
        label="Navigation",
        options=[
            MESSAGES['nav_home'],
            MESSAGES['nav_ring'],
            MESSAGES['nav_classify'],
            MESSAGES['nav_obstruct'],
            MESSAGES['nav_roots'],
        ],
        label_visibility="collapsed"
    )

    st.divider()

    if st.session_state.ring is not None:
        st.markdown("### 🔢 " + MESSAGES['sidebar_ring'])
        st.markdown(f"`{st.session_state.ring}`")

    if st.session_state.scan_report is not None:
        report = st.session_state.scan_report
        st.markdown("### 📈 " + MESSAGES['sidebar_scan'])
        st.metric(f"{report.family} survivors", ", ".join(str(p) for p in report.survivors) or "-")


def _verdict(flag: bool) -> str:
    return MESSAGES['verdict_pass'] if flag else MESSAGES['verdict_fail']


if page == MESSAGES['nav_home']:
    # ============= HOME PAGE =============
    st.markdown(f"### {MESSAGES['home_welcome']}")

    col1, col2 = st.columns(2)

    with col1:
        st.markdown(f"{MESSAGES['home_features']}")
        st.markdown(f"""
- {MESSAGES['home_feature_verify']}
- {MESSAGES['home_feature_classify']}
- {MESSAGES['home_feature_scans']}
- {MESSAGES['home_feature_roots']}
        """)

    with col2:
        st.info(f"**🚀 {MESSAGES['home_getting_started']}**")

    st.divider()
    st.markdown("#### 📝 " + MESSAGES['ring_upload_label'])
    st.code(MESSAGES['ring_upload_help'], language="json")

elif page == MESSAGES['nav_ring']:
    # ============= RING VERIFICATION PAGE =============
    st.markdown(f"### {MESSAGES['nav_ring']}")

    uploaded_file = st.file_uploader(
        MESSAGES['ring_upload_label'],
        type=['json'],
        help=MESSAGES['ring_upload_help']
    )
    if uploaded_file is not None:
        ring, error = load_ring_file(uploaded_file)
        if error:
            st.error(f"{MESSAGES['error_ring']} {error}")
        else:
            st.session_state.ring = ring

    st.markdown(f"#### {MESSAGES['ring_family_label']}")
    col1, col2, col3 = st.columns([1, 1, 1])
    with col1:
        family = st.selectbox("Family", ["K1(e)", "K2(c)"])
    with col2:
        value = st.number_input("Parameter", min_value=0, max_value=200, value=2, step=1)
    with col3:
        st.write("")
        if st.button(MESSAGES['btn_build']):
            st.session_state.ring = k1_ring(int(value)) if family == "K1(e)" else k2_ring(int(value))

    ring = st.session_state.ring
    if ring is None:
        st.warning(MESSAGES['msg_ring_required'])
    else:
        st.divider()
        is_valid, message = validate_ring(ring)
        if is_valid:
            st.success(message)
        else:
            st.error(message)

        verification = verify_based_ring(ring)
        st.markdown(f"#### {MESSAGES['ring_axioms']}")
        st.dataframe(pd.DataFrame([
            {"axiom": c.name, "result": _verdict(c.passed), "detail": c.detail} for c in verification.mandatory
        ]), use_container_width=True)
        with st.expander(MESSAGES['ring_extended_axioms']):
            st.dataframe(pd.DataFrame([
                {"axiom": c.name, "result": _verdict(c.passed), "detail": c.detail} for c in verification.extended
            ]), use_container_width=True)

        heat_cols = st.columns(ring.rank - 1 or 1)
        for index in range(1, ring.rank):
            with heat_cols[index - 1]:
                st.plotly_chart(create_fusion_heatmap(ring, index), use_container_width=True)

        if is_valid:
            try:
                dims = fpdim(ring)
                st.markdown(f"#### {MESSAGES['ring_fpdims']}")
                st.dataframe(pd.DataFrame({
                    "element": list(ring.labels),
                    "FPdim": [str(d) for d in dims.dims],
                }), use_container_width=True)
                st.metric("dim", str(dims.dim))
            except FuscatError as e:
                st.warning(str(e))

            codegrees = formal_codegrees(ring)
            gates = ostrik_gates(codegrees)
            st.markdown(f"#### {MESSAGES['ring_codegrees']}")
            st.plotly_chart(create_codegree_bar_chart(codegrees), use_container_width=True)

            st.markdown(f"#### {MESSAGES['ring_gates']}")
            col1, col2, col3 = st.columns(3)
            with col1:
                st.metric(MESSAGES['gate_positive'], _verdict(gates.positive))
            with col2:
                st.metric(MESSAGES['gate_reciprocal_sum'], _verdict(gates.reciprocal_ok), str(gates.reciprocal_sum))
            with col3:
                st.metric(MESSAGES['gate_square_sum'], _verdict(gates.square_ok), str(gates.square_sum))

        st.download_button(
            MESSAGES['btn_download_ring'],
            data=to_json(ring.to_dict()),
            file_name="ring.json",
            mime="application/json"
        )

elif page == MESSAGES['nav_classify']:
    # ============= CLASSIFICATION PAGE =============
    st.markdown(f"### {MESSAGES['nav_classify']}")

    cols = st.columns(4)
    bounds = {}
    for col, (name, default) in zip(cols, DEFAULT_BOX.items()):
        with col:
            bounds[name] = st.number_input(name, min_value=0, max_value=200, value=default, step=1)

    if st.button(MESSAGES['btn_run'], key="run_classify"):
        try:
            with st.spinner(MESSAGES['msg_processing']):
                st.session_state.classification = classify_rank4(Box(**{k: int(v) for k, v in bounds.items()}))
            st.success(MESSAGES['msg_success'])
        except FuscatError as e:
            st.error(f"{MESSAGES['msg_error']}: {e}")

    report = st.session_state.classification
    if report is not None:
        rows = pd.DataFrame(report.to_rows())
        col1, col2, col3 = st.columns(3)
        with col1:
            st.metric("Candidates", len(report.decisions))
        with col2:
            st.metric("Survivors", len(report.survivor_families()))
        with col3:
            st.metric("γ = 8 exclusion", _verdict(report.gamma8.passed))

        if report.matches_claim:
            st.success(MESSAGES['verdict_matches_claim'])
        else:
            st.error(MESSAGES['verdict_claim_mismatch'])

        if not rows.empty:
            st.plotly_chart(create_classification_scatter(rows), use_container_width=True)
            st.dataframe(rows, use_container_width=True)
            st.download_button(
                MESSAGES['btn_download_csv'],
                data=export_data_csv(report.to_rows()),
                file_name="classification.csv",
                mime="text/csv"
            )

elif page == MESSAGES['nav_obstruct']:
    # ============= OBSTRUCTION SCAN PAGE =============
    st.markdown(f"### {MESSAGES['nav_obstruct']}")

    col1, col2 = st.columns(2)
    with col1:
        family = st.radio("Family", ["k1", "k2"], horizontal=True)
    with col2:
        default = DEFAULT_MAX_E if family == "k1" else DEFAULT_MAX_C
        max_param = st.slider("Largest parameter", 0, 3 * default, default)

    if st.button(MESSAGES['btn_run'], key="run_scan"):
        with st.spinner(MESSAGES['msg_processing']):
            st.session_state.scan_report = scan(family, max_param)
        st.success(MESSAGES['msg_success'])

    report = st.session_state.scan_report
    if report is not None:
        st.markdown(f"**survivors:** {{{', '.join(str(p) for p in report.survivors)}}}")
        if report.matches_claim:
            st.success(MESSAGES['verdict_matches_claim'])
        else:
            st.error(MESSAGES['verdict_claim_mismatch'])

        rows = pd.DataFrame(report.to_rows())
        st.plotly_chart(create_scan_chart(rows), use_container_width=True)
        st.dataframe(rows, use_container_width=True)

        st.markdown(f"#### {MESSAGES['scan_identities']}")
        for param in report.survivors:
            identities = twist_identity_checks(report.family, param)
            with st.expander(f"{report.family}({param}): {_verdict(identities.passed)}"):
                st.dataframe(pd.DataFrame([c.to_dict() for c in identities.checks]), use_container_width=True)

        with st.expander(MESSAGES['scan_assumptions']):
            for verdict in report.verdicts[:1]:
                for line in verdict.to_dict()["assumptions"]:
                    st.markdown(f"- {line}")

        st.download_button(
            MESSAGES['btn_download_text'],
            data=to_text(report.to_dict(), header=[f"{report.family} scan to {report.max_param}"]),
            file_name=f"{report.family}_scan.txt",
            mime="text/plain"
        )

elif page == MESSAGES['nav_roots']:
    # ============= ROOTS OF UNITY PAGE =============
    st.markdown(f"### {MESSAGES['nav_roots']}")

    st.markdown(f"#### {MESSAGES['roots_orbits']}")
    col1, col2 = st.columns(2)
    with col1:
        c = st.number_input("c (squarefree)", min_value=2, max_value=500, value=3, step=1)
    with col2:
        order = st.number_input("Y", min_value=1, max_value=240, value=12, step=1)
    try:
        orbit_report = orbit_sums(int(c), int(order))
        st.plotly_chart(create_orbit_plot(orbit_report), use_container_width=True)
        st.dataframe(pd.DataFrame(orbit_report.to_rows()), use_container_width=True)
    except FuscatError as e:
        st.error(str(e))

    st.divider()
    st.markdown(f"#### {MESSAGES['roots_minroots']}")
    cols = st.columns(5)
    with cols[0]:
        a = st.number_input("a", value=0, step=1)
    with cols[1]:
        b = st.number_input("b", value=1, step=1)
    with cols[2]:
        radicand = st.number_input("c", min_value=0, value=2, step=1)
    with cols[3]:
        max_order = st.number_input("max order", min_value=1, value=DEFAULT_MAX_ORDER, step=1)
    with cols[4]:
        max_count = st.number_input("max count", min_value=0, value=DEFAULT_MAX_COUNT, step=1)

    if st.button(MESSAGES['btn_run'], key="run_minroots"):
        with st.spinner(MESSAGES['msg_processing']):
            result = minroots_bruteforce(QuadVal(int(a), int(b), int(radicand)), int(max_order), int(max_count))
        if result.found:
            witness = " + ".join(f"ζ{o}^{j}" for o, j in result.witness) or "0"
            st.success(f"minimum {result.minimum}: {witness}")
        else:
            st.warning(f"{MESSAGES['verdict_exceeds_budget']} ({result.status})")

# Footer
st.divider()
st.markdown(f"<div class='footer'>{MESSAGES['footer_made_with']} | {MESSAGES['footer_version']} {APP_VERSION}</div>", unsafe_allow_html=True)

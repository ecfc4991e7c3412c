/**
 * Service responses recorded from a live backend run against the bundled
 * demonstration models. Tests feed these through a mocked fetch, so every
 * number the UI renders is traceable to a genuine service payload.
 */

// prettier-ignore
export const RECORDED = {
  "accept_response": {
    "applied": {
      "cap_bound": false,
      "child": "C",
      "child_state": "present",
      "id": "a1",
      "kind": "replace_conditional",
      "new_value": "0.3492424242424242",
      "old_value": "0.25",
      "parent": "A",
      "parent_state": "1",
      "rationale": "recomputed P(C=present|A=1) so the weighted conditionals reproduce the stated marginal (heaviest weight P(A=1)=0.66)",
      "rule": "single-conditional"
    },
    "consistency": {
      "missing": [],
      "ok": true,
      "pairs": [
        {
          "child": "C",
          "child_state": "present",
          "computed": "0.25",
          "degenerate_boundary": false,
          "hull": [
            "0.05",
            "0.3492424242424242"
          ],
          "hull_flag": false,
          "in_hull": true,
          "inconsistent": false,
          "missing": [],
          "parent": "A",
          "residual": "0.0",
          "stated": "0.25"
        }
      ],
      "tolerance": "0.05"
    }
  },
  "answers_put": {
    "answers": [
      {
        "accepted": true,
        "active": true,
        "pairs": [
          {
            "child": "C",
            "child_state": "present",
            "computed": null,
            "degenerate_boundary": null,
            "hull": null,
            "hull_flag": false,
            "in_hull": null,
            "inconsistent": false,
            "missing": [
              "P(A=1)",
              "P(A=2)"
            ],
            "parent": "A",
            "residual": null,
            "stated": null
          }
        ],
        "target": {
          "kind": "marginal",
          "state": "0",
          "variable": "A"
        }
      },
      {
        "accepted": true,
        "active": true,
        "pairs": [
          {
            "child": "C",
            "child_state": "present",
            "computed": null,
            "degenerate_boundary": null,
            "hull": null,
            "hull_flag": false,
            "in_hull": null,
            "inconsistent": false,
            "missing": [
              "P(C=present)",
              "P(C=present|A=0)",
              "P(C=present|A=1)",
              "P(C=present|A=2)"
            ],
            "parent": "A",
            "residual": null,
            "stated": null
          }
        ],
        "target": {
          "kind": "marginal",
          "state": "1",
          "variable": "A"
        }
      },
      {
        "accepted": true,
        "active": true,
        "pairs": [
          {
            "child": "C",
            "child_state": "present",
            "computed": null,
            "degenerate_boundary": null,
            "hull": null,
            "hull_flag": false,
            "in_hull": null,
            "inconsistent": false,
            "missing": [
              "P(C=present|A=0)",
              "P(C=present|A=1)",
              "P(C=present|A=2)"
            ],
            "parent": "A",
            "residual": null,
            "stated": null
          }
        ],
        "target": {
          "kind": "marginal",
          "state": "present",
          "variable": "C"
        }
      },
      {
        "accepted": true,
        "active": true,
        "pairs": [
          {
            "child": "C",
            "child_state": "present",
            "computed": null,
            "degenerate_boundary": null,
            "hull": null,
            "hull_flag": false,
            "in_hull": null,
            "inconsistent": false,
            "missing": [
              "P(C=present|A=1)",
              "P(C=present|A=2)"
            ],
            "parent": "A",
            "residual": null,
            "stated": null
          }
        ],
        "target": {
          "child": "C",
          "child_state": "present",
          "given": [
            [
              "A",
              "0"
            ]
          ],
          "kind": "conditional"
        }
      },
      {
        "accepted": true,
        "active": true,
        "pairs": [
          {
            "child": "C",
            "child_state": "present",
            "computed": null,
            "degenerate_boundary": null,
            "hull": null,
            "hull_flag": false,
            "in_hull": null,
            "inconsistent": false,
            "missing": [
              "P(C=present|A=2)"
            ],
            "parent": "A",
            "residual": null,
            "stated": null
          }
        ],
        "target": {
          "child": "C",
          "child_state": "present",
          "given": [
            [
              "A",
              "1"
            ]
          ],
          "kind": "conditional"
        }
      },
      {
        "accepted": true,
        "active": true,
        "pairs": [
          {
            "child": "C",
            "child_state": "present",
            "computed": "0.1845",
            "degenerate_boundary": false,
            "hull": [
              "0.05",
              "0.3"
            ],
            "hull_flag": false,
            "in_hull": true,
            "inconsistent": true,
            "missing": [],
            "parent": "A",
            "residual": "0.0655",
            "stated": "0.25"
          }
        ],
        "target": {
          "child": "C",
          "child_state": "present",
          "given": [
            [
              "A",
              "2"
            ]
          ],
          "kind": "conditional"
        }
      }
    ]
  },
  "application_edges": [
    [
      "Ab",
      "M4"
    ],
    [
      "Ab",
      "M6"
    ],
    [
      "Ad",
      "M3"
    ],
    [
      "Ad",
      "M6"
    ],
    [
      "Ag",
      "M1p"
    ],
    [
      "Ag",
      "M2"
    ],
    [
      "DI",
      "M5"
    ],
    [
      "DJ",
      "M1p"
    ],
    [
      "DJ",
      "M1pp"
    ],
    [
      "M1p",
      "O2p"
    ],
    [
      "M1pp",
      "O1"
    ],
    [
      "M1pp",
      "O2p"
    ],
    [
      "M2",
      "O2p"
    ],
    [
      "M2",
      "O2pp"
    ],
    [
      "M3",
      "O2p"
    ],
    [
      "M3",
      "O2pp"
    ],
    [
      "M3",
      "O5"
    ],
    [
      "M4",
      "O1"
    ],
    [
      "M4",
      "O2p"
    ],
    [
      "M4",
      "O2pp"
    ],
    [
      "M4",
      "O5"
    ],
    [
      "M5",
      "O1"
    ],
    [
      "M5",
      "O2"
    ],
    [
      "M5",
      "O5"
    ],
    [
      "M6",
      "O1"
    ],
    [
      "M6",
      "O2p"
    ],
    [
      "M6",
      "O2pp"
    ],
    [
      "M6",
      "O5"
    ],
    [
      "O1",
      "E"
    ],
    [
      "O2",
      "O2pp"
    ],
    [
      "O2p",
      "E"
    ],
    [
      "O2pp",
      "O2p"
    ],
    [
      "O5",
      "E"
    ],
    [
      "PI2",
      "M1pp"
    ],
    [
      "PI3",
      "M2"
    ],
    [
      "PI3",
      "M3"
    ],
    [
      "PI3",
      "M5"
    ],
    [
      "PI4",
      "M4"
    ],
    [
      "PI6",
      "M4"
    ]
  ],
  "application_variables": [
    {
      "description": "abrasive particle content of the coolant",
      "group": "environment",
      "id": "Ab",
      "states": [
        "high",
        "medium",
        "low"
      ]
    },
    {
      "description": "adhesive wear conditions at the shaft seal",
      "group": "environment",
      "id": "Ad",
      "states": [
        "adverse",
        "normal"
      ]
    },
    {
      "description": "aggressive water chemistry episodes",
      "group": "environment",
      "id": "Ag",
      "states": [
        "adverse",
        "normal"
      ]
    },
    {
      "description": "injection line configuration",
      "group": "environment",
      "id": "DI",
      "states": [
        "adverse",
        "normal"
      ]
    },
    {
      "description": "joint and gasket design generation",
      "group": "environment",
      "id": "DJ",
      "states": [
        "adverse",
        "normal"
      ]
    },
    {
      "description": "sub-component state",
      "group": "interest",
      "id": "E",
      "states": [
        "degraded",
        "sound"
      ]
    },
    {
      "description": "seal face wear, primary path",
      "group": "degradation",
      "id": "M1p",
      "states": [
        "present",
        "absent"
      ]
    },
    {
      "description": "seal face wear, secondary path",
      "group": "degradation",
      "id": "M1pp",
      "states": [
        "present",
        "absent"
      ]
    },
    {
      "description": "impeller surface erosion",
      "group": "degradation",
      "id": "M2",
      "states": [
        "present",
        "absent"
      ]
    },
    {
      "description": "corrosion pitting",
      "group": "degradation",
      "id": "M3",
      "states": [
        "present",
        "absent"
      ]
    },
    {
      "description": "fretting damage",
      "group": "degradation",
      "id": "M4",
      "states": [
        "severe",
        "moderate",
        "none"
      ]
    },
    {
      "description": "bearing degradation",
      "group": "degradation",
      "id": "M5",
      "states": [
        "present",
        "absent"
      ]
    },
    {
      "description": "shaft misalignment wear",
      "group": "degradation",
      "id": "M6",
      "states": [
        "present",
        "absent"
      ]
    },
    {
      "description": "vibration alarm signature",
      "group": "observation",
      "id": "O1",
      "states": [
        "anomalous",
        "normal"
      ]
    },
    {
      "description": "temperature anomaly",
      "group": "observation",
      "id": "O2",
      "states": [
        "anomalous",
        "normal"
      ]
    },
    {
      "description": "leak rate trend anomaly",
      "group": "observation",
      "id": "O2p",
      "states": [
        "anomalous",
        "normal"
      ]
    },
    {
      "description": "acoustic emission anomaly",
      "group": "observation",
      "id": "O2pp",
      "states": [
        "anomalous",
        "normal"
      ]
    },
    {
      "description": "coolant particle count anomaly",
      "group": "observation",
      "id": "O5",
      "states": [
        "anomalous",
        "normal"
      ]
    },
    {
      "description": "pressure fluctuation regime",
      "group": "environment",
      "id": "PI2",
      "states": [
        "high",
        "medium",
        "low"
      ]
    },
    {
      "description": "thermal cycling intensity",
      "group": "environment",
      "id": "PI3",
      "states": [
        "high",
        "medium",
        "low"
      ]
    },
    {
      "description": "vibration exposure level",
      "group": "environment",
      "id": "PI4",
      "states": [
        "adverse",
        "normal"
      ]
    },
    {
      "description": "duty-cycle load profile",
      "group": "environment",
      "id": "PI6",
      "states": [
        "high",
        "medium",
        "low"
      ]
    }
  ],
  "bad_answer": {
    "answers": [
      {
        "accepted": false,
        "error": {
          "code": "out_of_range",
          "message": "probability 1.7 outside [0, 1]",
          "value": 1.7
        },
        "target": {
          "kind": "marginal",
          "state": "0",
          "variable": "A"
        }
      }
    ]
  },
  "consistency_clean": {
    "missing": [],
    "ok": true,
    "pairs": [
      {
        "child": "C",
        "child_state": "present",
        "computed": "0.25",
        "degenerate_boundary": false,
        "hull": [
          "0.05",
          "0.3492424242424242"
        ],
        "hull_flag": false,
        "in_hull": true,
        "inconsistent": false,
        "missing": [],
        "parent": "A",
        "residual": "0.0",
        "stated": "0.25"
      }
    ],
    "tolerance": "0.05"
  },
  "consistency_inconsistent": {
    "missing": [],
    "ok": false,
    "pairs": [
      {
        "child": "C",
        "child_state": "present",
        "computed": "0.1845",
        "degenerate_boundary": false,
        "hull": [
          "0.05",
          "0.3"
        ],
        "hull_flag": false,
        "in_hull": true,
        "inconsistent": true,
        "missing": [],
        "parent": "A",
        "residual": "0.0655",
        "stated": "0.25"
      }
    ],
    "tolerance": "0.05"
  },
  "open_session": {
    "session_id": "6ed236d2fcf1",
    "tolerance": "0.05"
  },
  "questions_initial": {
    "questions": [
      {
        "prompt": "How probable is it that operating regime is in state '0'?",
        "rare_event": false,
        "target": {
          "kind": "marginal",
          "state": "0",
          "variable": "A"
        }
      },
      {
        "prompt": "How probable is it that operating regime is in state '1'?",
        "rare_event": false,
        "target": {
          "kind": "marginal",
          "state": "1",
          "variable": "A"
        }
      },
      {
        "prompt": "How probable is it that defect presence is in state 'present'?",
        "rare_event": false,
        "target": {
          "kind": "marginal",
          "state": "present",
          "variable": "C"
        }
      },
      {
        "prompt": "Given that operating regime is '0', how probable is it that defect presence is 'present'?",
        "rare_event": false,
        "target": {
          "child": "C",
          "child_state": "present",
          "given": [
            [
              "A",
              "0"
            ]
          ],
          "kind": "conditional"
        }
      },
      {
        "prompt": "Given that operating regime is '1', how probable is it that defect presence is 'present'?",
        "rare_event": false,
        "target": {
          "child": "C",
          "child_state": "present",
          "given": [
            [
              "A",
              "1"
            ]
          ],
          "kind": "conditional"
        }
      },
      {
        "prompt": "Given that operating regime is '2', how probable is it that defect presence is 'present'?",
        "rare_event": false,
        "target": {
          "child": "C",
          "child_state": "present",
          "given": [
            [
              "A",
              "2"
            ]
          ],
          "kind": "conditional"
        }
      }
    ]
  },
  "reconcile_proposals": {
    "clean_after_all": true,
    "notes": [],
    "proposals": [
      {
        "cap_bound": false,
        "child": "C",
        "child_state": "present",
        "id": "prop1",
        "kind": "replace_conditional",
        "new_value": "0.3492424242424242",
        "old_value": "0.25",
        "parent": "A",
        "parent_state": "1",
        "rationale": "recomputed P(C=present|A=1) so the weighted conditionals reproduce the stated marginal (heaviest weight P(A=1)=0.66)",
        "rule": "single-conditional"
      }
    ]
  },
  "whatif_request_scenarios": [
    {
      "actions": [
        {
          "prior": {
            "applied": "0.5",
            "skipped": "0.5"
          },
          "table": {
            "applied": {
              "adverse": "0.7026902449486296",
              "normal": "0.29730975505137036"
            },
            "skipped": {
              "adverse": "0.7026902449486296",
              "normal": "0.29730975505137036"
            }
          },
          "target": "Ad",
          "task": {
            "description": "no-op task",
            "id": "T_noop",
            "states": [
              "applied",
              "skipped"
            ]
          }
        }
      ],
      "name": "noop"
    },
    {
      "actions": [
        {
          "prior": {
            "applied": "1.0",
            "skipped": "0.0"
          },
          "table": {
            "applied": {
              "high": "0.05",
              "low": "0.8",
              "medium": "0.15"
            },
            "skipped": {
              "high": "0.4",
              "low": "0.2",
              "medium": "0.4"
            }
          },
          "target": "Ab",
          "task": {
            "description": "coolant filter upgrade",
            "id": "T_filter",
            "states": [
              "applied",
              "skipped"
            ]
          }
        }
      ],
      "name": "filter upgrade"
    }
  ],
  "whatif_response": {
    "base": {
      "distribution": {
        "degraded": "0.42093024586972155",
        "sound": "0.5790697541302785"
      },
      "elimination_order": [
        "DI",
        "PI2",
        "DJ",
        "PI4",
        "PI6",
        "Ab",
        "Ad",
        "Ag",
        "O2",
        "O1",
        "O5",
        "PI3",
        "M1p",
        "M2",
        "O2pp",
        "M1pp",
        "M3",
        "M4",
        "M5",
        "M6",
        "O2p"
      ],
      "evidence": {},
      "variable": "E"
    },
    "scenarios": {
      "filter upgrade": {
        "distribution": {
          "degraded": "0.4206141967247753",
          "sound": "0.5793858032752247"
        },
        "elimination_order": [
          "T_filter",
          "DI",
          "PI2",
          "DJ",
          "PI4",
          "PI6",
          "Ab",
          "Ad",
          "Ag",
          "O2",
          "O1",
          "O5",
          "PI3",
          "M1p",
          "M2",
          "O2pp",
          "M1pp",
          "M3",
          "M4",
          "M5",
          "M6",
          "O2p"
        ],
        "evidence": {},
        "variable": "E"
      },
      "noop": {
        "distribution": {
          "degraded": "0.42093024586972155",
          "sound": "0.5790697541302785"
        },
        "elimination_order": [
          "T_noop",
          "DI",
          "PI2",
          "DJ",
          "PI4",
          "PI6",
          "Ab",
          "Ad",
          "Ag",
          "O2",
          "O1",
          "O5",
          "PI3",
          "M1p",
          "M2",
          "O2pp",
          "M1pp",
          "M3",
          "M4",
          "M5",
          "M6",
          "O2p"
        ],
        "evidence": {},
        "variable": "E"
      }
    }
  }
} as const;

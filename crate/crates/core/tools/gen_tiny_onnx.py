"""Writes tests/fixtures/tiny_linear.onnx: pixels[N,3,8,8] -> flatten -> matmul -> embedding[N,4].

W[k, j] = sin(0.1 * k + j), k over the channel-major flattening.
"""
import os

import numpy as np
import onnx
from onnx import TensorProto, helper, numpy_helper

here = os.path.dirname(os.path.abspath(__file__))
out = os.path.join(here, "..", "tests", "fixtures", "tiny_linear.onnx")

k = np.arange(192)[:, None]
j = np.arange(4)[None, :]
w = np.sin(0.1 * k + j).astype(np.float32)

graph = helper.make_graph(
    [
        helper.make_node("Flatten", ["pixels"], ["flat"], axis=1),
        helper.make_node("MatMul", ["flat", "W"], ["embedding"]),
    ],
    "tiny_linear",
    [helper.make_tensor_value_info("pixels", TensorProto.FLOAT, ["N", 3, 8, 8])],
    [helper.make_tensor_value_info("embedding", TensorProto.FLOAT, ["N", 4])],
    initializer=[numpy_helper.from_array(w, "W")],
)
model = helper.make_model(graph, opset_imports=[helper.make_opsetid("", 13)])
model.ir_version = 8
onnx.checker.check_model(model)
onnx.save(model, out)
print(out)

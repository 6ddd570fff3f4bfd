/**
 * WebGL canvas for one network view: every node is a point sprite, every
 * edge a line segment, and a frame is exactly two draw calls (LINES for
 * edges, then POINTS for nodes).  Positions are uploaded once per graph and
 * never touched again; per-frame updates rewrite only the color attribute
 * buffer and the camera uniform, which is what keeps playback cheap and the
 * layout provably immutable on screen.
 */

import { Camera } from "./camera";
import { DecodedGraph } from "./stream";

const POINT_VERT = `
attribute vec2 aPos;
attribute vec3 aColor;
uniform mat3 uTransform;
uniform float uPointSize;
varying vec3 vColor;
void main() {
  vec3 p = uTransform * vec3(aPos, 1.0);
  gl_Position = vec4(p.xy, 0.0, 1.0);
  gl_PointSize = uPointSize;
  vColor = aColor;
}
`;

const POINT_FRAG = `
precision mediump float;
varying vec3 vColor;
void main() {
  vec2 d = gl_PointCoord - vec2(0.5);
  if (dot(d, d) > 0.25) discard;
  gl_FragColor = vec4(vColor, 1.0);
}
`;

const LINE_VERT = `
attribute vec2 aPos;
uniform mat3 uTransform;
void main() {
  vec3 p = uTransform * vec3(aPos, 1.0);
  gl_Position = vec4(p.xy, 0.0, 1.0);
}
`;

const LINE_FRAG = `
precision mediump float;
uniform vec4 uLineColor;
void main() {
  gl_FragColor = uLineColor;
}
`;

const CLEAR_COLOR: [number, number, number, number] = [0.06, 0.07, 0.09, 1.0];
const LINE_COLOR: [number, number, number, number] = [0.42, 0.45, 0.52, 0.3];
const MIN_POINT_PX = 3;
const MAX_POINT_PX = 16;

function compile(gl: WebGLRenderingContext, type: number, src: string): WebGLShader {
  const shader = gl.createShader(type);
  if (shader === null) throw new Error("createShader failed");
  gl.shaderSource(shader, src);
  gl.compileShader(shader);
  if (!gl.getShaderParameter(shader, gl.COMPILE_STATUS)) {
    throw new Error(`shader compile: ${gl.getShaderInfoLog(shader) ?? ""}`);
  }
  return shader;
}

function link(
  gl: WebGLRenderingContext,
  vert: string,
  frag: string,
): WebGLProgram {
  const program = gl.createProgram();
  if (program === null) throw new Error("createProgram failed");
  gl.attachShader(program, compile(gl, gl.VERTEX_SHADER, vert));
  gl.attachShader(program, compile(gl, gl.FRAGMENT_SHADER, frag));
  gl.linkProgram(program);
  if (!gl.getProgramParameter(program, gl.LINK_STATUS)) {
    throw new Error(`program link: ${gl.getProgramInfoLog(program) ?? ""}`);
  }
  return program;
}

export class GraphRenderer {
  private readonly gl: WebGLRenderingContext;
  private readonly pointProgram: WebGLProgram;
  private readonly lineProgram: WebGLProgram;
  private readonly positionBuffer: WebGLBuffer;
  private readonly colorBuffer: WebGLBuffer;
  private readonly edgeIndexBuffer: WebGLBuffer;
  private readonly transform = new Float32Array(9);
  private nodeCount = 0;
  private edgeIndexCount = 0;
  private edgeIndexType = 0;
  private colorsDirty: Float32Array | null = null;
  showEdges = true;

  constructor(private readonly canvas: HTMLCanvasElement) {
    const gl = canvas.getContext("webgl", {
      antialias: true,
      preserveDrawingBuffer: false,
    });
    if (gl === null) throw new Error("WebGL is not available");
    this.gl = gl;
    this.pointProgram = link(gl, POINT_VERT, POINT_FRAG);
    this.lineProgram = link(gl, LINE_VERT, LINE_FRAG);
    const make = () => {
      const b = gl.createBuffer();
      if (b === null) throw new Error("createBuffer failed");
      return b;
    };
    this.positionBuffer = make();
    this.colorBuffer = make();
    this.edgeIndexBuffer = make();
    gl.enable(gl.BLEND);
    gl.blendFunc(gl.SRC_ALPHA, gl.ONE_MINUS_SRC_ALPHA);
  }

  /** Upload graph geometry; positions stay on the GPU until the next graph. */
  setGraph(graph: DecodedGraph): void {
    const gl = this.gl;
    this.nodeCount = graph.nodeCount;
    gl.bindBuffer(gl.ARRAY_BUFFER, this.positionBuffer);
    gl.bufferData(gl.ARRAY_BUFFER, graph.positions, gl.STATIC_DRAW);
    gl.bindBuffer(gl.ARRAY_BUFFER, this.colorBuffer);
    gl.bufferData(
      gl.ARRAY_BUFFER,
      graph.nodeCount * 3 * 4,
      gl.DYNAMIC_DRAW,
    );
    // 32-bit indices need an extension on WebGL1; small graphs fit 16 bits.
    gl.bindBuffer(gl.ELEMENT_ARRAY_BUFFER, this.edgeIndexBuffer);
    if (graph.nodeCount > 0xffff) {
      if (gl.getExtension("OES_element_index_uint") === null) {
        throw new Error("graph too large for this GPU (no 32-bit indices)");
      }
      gl.bufferData(gl.ELEMENT_ARRAY_BUFFER, graph.edges, gl.STATIC_DRAW);
      this.edgeIndexType = gl.UNSIGNED_INT;
    } else {
      gl.bufferData(
        gl.ELEMENT_ARRAY_BUFFER,
        Uint16Array.from(graph.edges),
        gl.STATIC_DRAW,
      );
      this.edgeIndexType = gl.UNSIGNED_SHORT;
    }
    this.edgeIndexCount = graph.edges.length;
  }

  /** Stage this frame's per-node colors; uploaded on the next draw. */
  setColors(colors: Float32Array): void {
    if (colors.length !== this.nodeCount * 3) {
      throw new Error(
        `color buffer is ${colors.length} floats for ${this.nodeCount} nodes`,
      );
    }
    this.colorsDirty = colors;
  }

  /** Render one frame: edges then nodes, one draw call each. */
  draw(camera: Camera): void {
    const gl = this.gl;
    const dpr = window.devicePixelRatio || 1;
    const width = this.canvas.clientWidth;
    const height = this.canvas.clientHeight;
    const devW = Math.max(Math.round(width * dpr), 1);
    const devH = Math.max(Math.round(height * dpr), 1);
    if (this.canvas.width !== devW || this.canvas.height !== devH) {
      this.canvas.width = devW;
      this.canvas.height = devH;
    }
    gl.viewport(0, 0, devW, devH);
    gl.clearColor(...CLEAR_COLOR);
    gl.clear(gl.COLOR_BUFFER_BIT);
    if (this.nodeCount === 0) return;

    // Camera math runs in CSS pixels; clip space keeps the aspect honest.
    camera.matrix({ width, height }, this.transform);

    if (this.colorsDirty !== null) {
      gl.bindBuffer(gl.ARRAY_BUFFER, this.colorBuffer);
      gl.bufferSubData(gl.ARRAY_BUFFER, 0, this.colorsDirty);
      this.colorsDirty = null;
    }

    if (this.showEdges && this.edgeIndexCount > 0) {
      gl.useProgram(this.lineProgram);
      const aPos = gl.getAttribLocation(this.lineProgram, "aPos");
      gl.bindBuffer(gl.ARRAY_BUFFER, this.positionBuffer);
      gl.enableVertexAttribArray(aPos);
      gl.vertexAttribPointer(aPos, 2, gl.FLOAT, false, 0, 0);
      gl.uniformMatrix3fv(
        gl.getUniformLocation(this.lineProgram, "uTransform"),
        false,
        this.transform,
      );
      gl.uniform4fv(
        gl.getUniformLocation(this.lineProgram, "uLineColor"),
        LINE_COLOR,
      );
      gl.bindBuffer(gl.ELEMENT_ARRAY_BUFFER, this.edgeIndexBuffer);
      gl.drawElements(gl.LINES, this.edgeIndexCount, this.edgeIndexType, 0);
    }

    gl.useProgram(this.pointProgram);
    const aPos = gl.getAttribLocation(this.pointProgram, "aPos");
    const aColor = gl.getAttribLocation(this.pointProgram, "aColor");
    gl.bindBuffer(gl.ARRAY_BUFFER, this.positionBuffer);
    gl.enableVertexAttribArray(aPos);
    gl.vertexAttribPointer(aPos, 2, gl.FLOAT, false, 0, 0);
    gl.bindBuffer(gl.ARRAY_BUFFER, this.colorBuffer);
    gl.enableVertexAttribArray(aColor);
    gl.vertexAttribPointer(aColor, 3, gl.FLOAT, false, 0, 0);
    gl.uniformMatrix3fv(
      gl.getUniformLocation(this.pointProgram, "uTransform"),
      false,
      this.transform,
    );
    const size = Math.min(
      Math.max(Math.sqrt(camera.scale) * 5, MIN_POINT_PX),
      MAX_POINT_PX,
    );
    gl.uniform1f(
      gl.getUniformLocation(this.pointProgram, "uPointSize"),
      size * dpr,
    );
    gl.drawArrays(gl.POINTS, 0, this.nodeCount);
  }

  dispose(): void {
    const gl = this.gl;
    gl.deleteBuffer(this.positionBuffer);
    gl.deleteBuffer(this.colorBuffer);
    gl.deleteBuffer(this.edgeIndexBuffer);
    gl.deleteProgram(this.pointProgram);
    gl.deleteProgram(this.lineProgram);
  }
}

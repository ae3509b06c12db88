#!/usr/bin/env python3
"""Regenerate the committed KB fixture under tests/fixtures/kb.

Run from the repo root: python tools/make_fixtures.py
"""

from __future__ import annotations

import json
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
KB = ROOT / "tests" / "fixtures" / "kb"

CORE_REPO = "https://github.com/comfyanonymous/ComfyUI"


def p(name, type, required=True, combo=None, default=None):
    obj = {"name": name, "type": type, "required": required}
    if combo is not None:
        obj["combo_options"] = combo
    if default is not None:
        obj["default"] = default
    return obj


def o(name, type):
    return {"name": name, "type": type}


NODES = [
    {
        "class_type": "CheckpointLoaderSimple",
        "display_name": "Load Checkpoint",
        "category": "loaders",
        "inputs": [p("ckpt_name", "COMBO", combo=["sd15.safetensors", "sdxl.safetensors"])],
        "outputs": [o("MODEL", "MODEL"), o("CLIP", "CLIP"), o("VAE", "VAE")],
        "stars": 48200,
        "description": (
            "Loads a checkpoint model file and returns its diffusion model, "
            "text encoder and latent decoder components"
        ),
    },
    {
        "class_type": "CLIPTextEncode",
        "display_name": "CLIP Text Encode (Prompt)",
        "category": "conditioning",
        "inputs": [p("text", "STRING"), p("clip", "CLIP")],
        "outputs": [o("CONDITIONING", "CONDITIONING")],
        "stars": 48200,
        "description": (
            "Encodes a text prompt with the CLIP text encoder into "
            "conditioning for the sampler"
        ),
    },
    {
        "class_type": "EmptyLatentImage",
        "display_name": "Empty Latent Image",
        "category": "latent",
        "inputs": [
            p("width", "INT", default=512),
            p("height", "INT", default=512),
            p("batch_size", "INT", default=1),
        ],
        "outputs": [o("LATENT", "LATENT")],
        "stars": 48200,
        "description": (
            "Creates an empty latent canvas with the requested width, height "
            "and batch size"
        ),
    },
    {
        "class_type": "KSampler",
        "display_name": "KSampler",
        "category": "sampling",
        "inputs": [
            p("model", "MODEL"),
            p("seed", "INT"),
            p("steps", "INT"),
            p("cfg", "FLOAT"),
            p("sampler_name", "COMBO", combo=["euler", "euler_ancestral", "dpmpp_2m"]),
            p("scheduler", "COMBO", combo=["normal", "karras"]),
            p("positive", "CONDITIONING"),
            p("negative", "CONDITIONING"),
            p("latent_image", "LATENT"),
            p("denoise", "FLOAT", default=1.0),
        ],
        "outputs": [o("LATENT", "LATENT")],
        "stars": 48200,
        "description": (
            "Denoises a latent image with the selected sampler guided by "
            "positive and negative conditioning"
        ),
    },
    {
        "class_type": "KSamplerAdvanced",
        "display_name": "KSampler (Advanced)",
        "category": "sampling",
        "inputs": [
            p("model", "MODEL"),
            p("add_noise", "COMBO", combo=["enable", "disable"]),
            p("noise_seed", "INT"),
            p("steps", "INT"),
            p("cfg", "FLOAT"),
            p("sampler_name", "COMBO", combo=["euler", "euler_ancestral", "dpmpp_2m"]),
            p("scheduler", "COMBO", combo=["normal", "karras"]),
            p("positive", "CONDITIONING"),
            p("negative", "CONDITIONING"),
            p("latent_image", "LATENT"),
            p("start_at_step", "INT", default=0),
            p("end_at_step", "INT", default=10000),
        ],
        "outputs": [o("LATENT", "LATENT")],
        "stars": 48200,
        "description": (
            "Advanced sampler exposing stepwise noise control for multi "
            "stage denoising schedules"
        ),
    },
    {
        "class_type": "VAEDecode",
        "display_name": "VAE Decode",
        "category": "latent",
        "inputs": [p("samples", "LATENT"), p("vae", "VAE")],
        "outputs": [o("IMAGE", "IMAGE")],
        "stars": 48200,
        "description": "Decodes latent samples into pixel images using the VAE decoder",
    },
    {
        "class_type": "VAEEncode",
        "display_name": "VAE Encode",
        "category": "latent",
        "inputs": [p("pixels", "IMAGE"), p("vae", "VAE")],
        "outputs": [o("LATENT", "LATENT")],
        "stars": 48200,
        "description": "Encodes pixel images into latent space for image to image workflows",
    },
    {
        "class_type": "SaveImage",
        "display_name": "Save Image",
        "category": "image",
        "inputs": [
            p("images", "IMAGE"),
            p("filename_prefix", "STRING", required=False, default="output"),
        ],
        "outputs": [],
        "stars": 48200,
        "description": (
            "Writes images to disk with a filename prefix and collects them "
            "as outputs"
        ),
    },
    {
        "class_type": "LoadImage",
        "display_name": "Load Image",
        "category": "image",
        "inputs": [p("image", "COMBO", combo=["example.png", "sofa.png"])],
        "outputs": [o("IMAGE", "IMAGE"), o("MASK", "MASK")],
        "stars": 48200,
        "description": "Loads an image file from the input folder and provides its mask",
    },
    {
        "class_type": "LoraLoader",
        "display_name": "Load LoRA",
        "category": "loaders",
        "inputs": [
            p("model", "MODEL"),
            p("clip", "CLIP"),
            p(
                "lora_name",
                "COMBO",
                combo=["pixel-art-sdxl.safetensors", "watercolor-sd15.safetensors"],
            ),
            p("strength_model", "FLOAT", default=1.0),
            p("strength_clip", "FLOAT", default=1.0),
        ],
        "outputs": [o("MODEL", "MODEL"), o("CLIP", "CLIP")],
        "stars": 48200,
        "description": (
            "Applies a LoRA adapter to the diffusion model and text encoder "
            "with adjustable strengths"
        ),
    },
    {
        "class_type": "UpscaleModelLoader",
        "display_name": "Load Upscale Model",
        "category": "loaders",
        "inputs": [p("model_name", "COMBO", combo=["RealESRGAN_x4.pth", "4x-UltraSharp.pth"])],
        "outputs": [o("UPSCALE_MODEL", "UPSCALE_MODEL")],
        "stars": 9100,
        "description": "Loads an upscale model such as ESRGAN for image enhancement",
    },
    {
        "class_type": "ImageUpscaleWithModel",
        "display_name": "Upscale Image (using Model)",
        "category": "image",
        "inputs": [p("upscale_model", "UPSCALE_MODEL"), p("image", "IMAGE")],
        "outputs": [o("IMAGE", "IMAGE")],
        "stars": 9100,
        "description": (
            "Upscales an image using a loaded upscale model for higher "
            "resolution output"
        ),
    },
]

MODELS = [
    {
        "id": "ckpt-sd15",
        "name": "SD 1.5 base checkpoint",
        "kind": "checkpoint",
        "base_model": "SD1.5",
        "description": "General purpose stable diffusion 1.5 base checkpoint for text to image",
        "downloads": 120000,
        "upvotes": 2100,
    },
    {
        "id": "ckpt-sdxl",
        "name": "SDXL base checkpoint",
        "kind": "checkpoint",
        "base_model": "SDXL",
        "description": "High resolution SDXL base checkpoint with strong prompt adherence",
        "downloads": 98000,
        "upvotes": 3500,
    },
    {
        "id": "lora-pixel-sdxl",
        "name": "Pixel art style LoRA",
        "kind": "lora",
        "base_model": "SDXL",
        "description": "LoRA adapter adding crisp pixel art game style to SDXL renders",
        "downloads": 15000,
        "upvotes": 800,
    },
    {
        "id": "lora-watercolor-sd15",
        "name": "Watercolor wash LoRA",
        "kind": "lora",
        "base_model": "SD1.5",
        "description": "Soft watercolor painting style adapter for stable diffusion 1.5",
        "downloads": 9000,
        "upvotes": 450,
    },
    {
        "id": "vae-ft-mse",
        "name": "Fine-tuned MSE VAE",
        "kind": "vae",
        "base_model": None,
        "description": "Improved latent decoder fixing washed out colors and fine detail",
        "downloads": 56000,
        "upvotes": 1200,
    },
]


def t2i_graph(prompt, negative="blurry, low quality", ckpt="sd15.safetensors", seed=42):
    return {
        "1": {"class_type": "CheckpointLoaderSimple", "inputs": {"ckpt_name": ckpt}},
        "2": {"class_type": "CLIPTextEncode", "inputs": {"text": prompt, "clip": ["1", 1]}},
        "3": {"class_type": "CLIPTextEncode", "inputs": {"text": negative, "clip": ["1", 1]}},
        "4": {
            "class_type": "EmptyLatentImage",
            "inputs": {"width": 512, "height": 512, "batch_size": 1},
        },
        "5": {
            "class_type": "KSampler",
            "inputs": {
                "model": ["1", 0],
                "seed": seed,
                "steps": 20,
                "cfg": 7.0,
                "sampler_name": "euler",
                "scheduler": "normal",
                "positive": ["2", 0],
                "negative": ["3", 0],
                "latent_image": ["4", 0],
                "denoise": 1.0,
            },
        },
        "6": {"class_type": "VAEDecode", "inputs": {"samples": ["5", 0], "vae": ["1", 2]}},
        "7": {
            "class_type": "SaveImage",
            "inputs": {"images": ["6", 0], "filename_prefix": "t2i"},
        },
    }


def lora_graph(prompt, lora, ckpt):
    return {
        "1": {"class_type": "CheckpointLoaderSimple", "inputs": {"ckpt_name": ckpt}},
        "2": {
            "class_type": "LoraLoader",
            "inputs": {
                "model": ["1", 0],
                "clip": ["1", 1],
                "lora_name": lora,
                "strength_model": 0.8,
                "strength_clip": 0.8,
            },
        },
        "3": {"class_type": "CLIPTextEncode", "inputs": {"text": prompt, "clip": ["2", 1]}},
        "4": {
            "class_type": "CLIPTextEncode",
            "inputs": {"text": "lowres, artifacts", "clip": ["2", 1]},
        },
        "5": {
            "class_type": "EmptyLatentImage",
            "inputs": {"width": 768, "height": 768, "batch_size": 1},
        },
        "6": {
            "class_type": "KSampler",
            "inputs": {
                "model": ["2", 0],
                "seed": 7,
                "steps": 24,
                "cfg": 6.5,
                "sampler_name": "dpmpp_2m",
                "scheduler": "karras",
                "positive": ["3", 0],
                "negative": ["4", 0],
                "latent_image": ["5", 0],
                "denoise": 1.0,
            },
        },
        "7": {"class_type": "VAEDecode", "inputs": {"samples": ["6", 0], "vae": ["1", 2]}},
        "8": {
            "class_type": "SaveImage",
            "inputs": {"images": ["7", 0], "filename_prefix": "styled"},
        },
    }


UPSCALE_GRAPH = {
    "1": {"class_type": "LoadImage", "inputs": {"image": "example.png"}},
    "2": {"class_type": "UpscaleModelLoader", "inputs": {"model_name": "RealESRGAN_x4.pth"}},
    "3": {
        "class_type": "ImageUpscaleWithModel",
        "inputs": {"upscale_model": ["2", 0], "image": ["1", 0]},
    },
    "4": {
        "class_type": "SaveImage",
        "inputs": {"images": ["3", 0], "filename_prefix": "upscaled"},
    },
}

IMG2IMG_GRAPH = {
    "1": {"class_type": "CheckpointLoaderSimple", "inputs": {"ckpt_name": "sd15.safetensors"}},
    "2": {"class_type": "LoadImage", "inputs": {"image": "sofa.png"}},
    "3": {"class_type": "VAEEncode", "inputs": {"pixels": ["2", 0], "vae": ["1", 2]}},
    "4": {
        "class_type": "CLIPTextEncode",
        "inputs": {"text": "a cozy sofa in a bright living room", "clip": ["1", 1]},
    },
    "5": {"class_type": "CLIPTextEncode", "inputs": {"text": "distorted", "clip": ["1", 1]}},
    "6": {
        "class_type": "KSampler",
        "inputs": {
            "model": ["1", 0],
            "seed": 99,
            "steps": 18,
            "cfg": 7.5,
            "sampler_name": "euler",
            "scheduler": "normal",
            "positive": ["4", 0],
            "negative": ["5", 0],
            "latent_image": ["3", 0],
            "denoise": 0.6,
        },
    },
    "7": {"class_type": "VAEDecode", "inputs": {"samples": ["6", 0], "vae": ["1", 2]}},
    "8": {
        "class_type": "SaveImage",
        "inputs": {"images": ["7", 0], "filename_prefix": "img2img"},
    },
}


def hires_graph():
    g = t2i_graph("a detailed castle on a cliff, epic scale", seed=1234)
    del g["7"]
    g["7"] = {
        "class_type": "UpscaleModelLoader",
        "inputs": {"model_name": "4x-UltraSharp.pth"},
    }
    g["8"] = {
        "class_type": "ImageUpscaleWithModel",
        "inputs": {"upscale_model": ["7", 0], "image": ["6", 0]},
    }
    g["9"] = {
        "class_type": "SaveImage",
        "inputs": {"images": ["8", 0], "filename_prefix": "hires"},
    }
    return g


WORKFLOWS = [
    {
        "id": "wf-basic-t2i",
        "title": "Basic text to image",
        "description": (
            "Classic text to image workflow: checkpoint loader, prompt "
            "encoders, latent canvas, KSampler denoising and VAE decode"
        ),
        "stats": {"stars": 320, "downloads": 5400, "upvotes": 210},
        "graph": t2i_graph("a scenic mountain lake at sunrise"),
    },
    {
        "id": "wf-upscale",
        "title": "Fast image upscaling",
        "description": (
            "Fast upscaling workflow that restores image quality with a "
            "dedicated upscale model"
        ),
        "stats": {"stars": 150, "downloads": 8000, "upvotes": 340},
        "graph": UPSCALE_GRAPH,
    },
    {
        "id": "wf-img2img",
        "title": "Image to image refinement",
        "description": (
            "Image to image workflow that encodes a source picture into "
            "latent space and redraws it with partial denoising"
        ),
        "stats": {"stars": 95, "downloads": 2100, "upvotes": 88},
        "graph": IMG2IMG_GRAPH,
    },
    {
        "id": "wf-watercolor",
        "title": "Watercolor style via LoRA",
        "description": (
            "Applies a watercolor painting LoRA adapter before sampling for "
            "soft washed illustration output"
        ),
        "stats": {"stars": 61, "downloads": 900, "upvotes": 40},
        "graph": lora_graph(
            "a watercolor landscape of rolling hills",
            "watercolor-sd15.safetensors",
            "sd15.safetensors",
        ),
    },
    {
        "id": "wf-portrait",
        "title": "Portrait photography",
        "description": (
            "Portrait oriented text to image workflow tuned for soft studio "
            "lighting and natural skin tones"
        ),
        "stats": {"stars": 44, "downloads": 700, "upvotes": 25},
        "graph": t2i_graph(
            "studio portrait of an elderly fisherman, soft light", seed=77
        ),
    },
    {
        "id": "wf-pixel-art",
        "title": "Pixel art generation",
        "description": (
            "Generates crisp pixel art game sprites by stacking a pixel art "
            "LoRA on the SDXL base model"
        ),
        "stats": {"stars": 130, "downloads": 3000, "upvotes": 160},
        "graph": lora_graph(
            "pixel art spaceship sprite, 64x64",
            "pixel-art-sdxl.safetensors",
            "sdxl.safetensors",
        ),
    },
    {
        "id": "wf-hires",
        "title": "Two stage high resolution",
        "description": (
            "Two stage pipeline: base sampling followed by model upscaling "
            "for high resolution final renders"
        ),
        "stats": {"stars": 210, "downloads": 4100, "upvotes": 190},
        "graph": hires_graph(),
    },
    {
        "id": "wf-anime",
        "title": "Anime illustration",
        "description": (
            "Anime illustration workflow with stylized prompts and a karras "
            "sampling schedule"
        ),
        "stats": {"stars": 58, "downloads": 1300, "upvotes": 70},
        "graph": t2i_graph("anime illustration of a sky city, vibrant", seed=5),
    },
]


def main() -> None:
    for sub in ("nodes", "models", "workflows"):
        (KB / sub).mkdir(parents=True, exist_ok=True)

    for node in NODES:
        node = dict(node)
        description = node.pop("description")
        node["repo_url"] = CORE_REPO
        node["doc"] = {
            "description": description,
            "input_docs": {
                i["name"]: f"{i['name']} ({i['type']}) input." for i in node["inputs"]
            },
            "output_docs": {
                out["name"]: f"{out['name']} ({out['type']}) output." for out in node["outputs"]
            },
        }
        path = KB / "nodes" / f"{node['class_type']}.json"
        path.write_text(json.dumps(node, indent=2, sort_keys=True) + "\n", encoding="utf-8")

    for model in MODELS:
        path = KB / "models" / f"{model['id']}.json"
        path.write_text(json.dumps(model, indent=2, sort_keys=True) + "\n", encoding="utf-8")

    for wf in WORKFLOWS:
        path = KB / "workflows" / f"{wf['id']}.json"
        path.write_text(json.dumps(wf, indent=2, sort_keys=True) + "\n", encoding="utf-8")

    # standalone copy of the 7-node fixture for the IR tests
    fixtures = KB.parent
    (fixtures / "workflow_t2i.json").write_text(
        json.dumps(t2i_graph("a scenic mountain lake at sunrise"), indent=2, sort_keys=True)
        + "\n",
        encoding="utf-8",
    )
    print(f"wrote fixtures under {KB}")


if __name__ == "__main__":
    main()

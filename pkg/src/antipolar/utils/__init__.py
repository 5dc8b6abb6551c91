from .model_serializer import ModelSerializer
